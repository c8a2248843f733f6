#include <cmath>
#include <string>

#include "csf/error.hpp"
#include "csf/geometry.hpp"

namespace csf {

double menger_curvature(Point2 a, Point2 b, Point2 c) noexcept {
  const Point2 ab = b - a;
  const Point2 bc = c - b;
  const double chord = distance(a, c);
  if (chord == 0.0) return 0.0;
  return 2.0 * cross(ab, bc) / (norm(ab) * norm(bc) * chord);
}

CurvatureField curvature(const ClosedCurve& curve) {
  const std::size_t n = curve.size();
  const double side = curve.orientation() == Orientation::ccw ? 1.0 : -1.0;
  CurvatureField field;
  field.kappa.resize(n);
  field.normal.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = curve[curve.prev(i)];
    const Point2 b = curve[i];
    const Point2 c = curve[curve.next(i)];
    const Point2 chord = c - a;
    const double len = norm(chord);
    if (len == 0.0) {
      throw DegenerateConfiguration(
          "degenerate vertex triple: neighbours of vertex " + std::to_string(i) + " coincide", i);
    }
    field.kappa[i] = side * menger_curvature(a, b, c);
    field.normal[i] = (side / len) * perp(chord);
  }
  return field;
}

std::vector<double> arclength_derivative(std::span<const double> f, const ClosedCurve& curve) {
  const std::size_t n = curve.size();
  if (f.size() != n) throw InvalidInput("field size does not match vertex count");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t im = curve.prev(i);
    const std::size_t ip = curve.next(i);
    const double hm = distance(curve[im], curve[i]);
    const double hp = distance(curve[i], curve[ip]);
    out[i] = (hm * hm * f[ip] - hp * hp * f[im] + (hp * hp - hm * hm) * f[i]) /
             (hm * hp * (hm + hp));
  }
  return out;
}

std::vector<double> curvature_derivative(const ClosedCurve& curve, int m) {
  if (m < 0) throw InvalidInput("derivative order must be non-negative");
  std::vector<double> field = curvature(curve).kappa;
  for (int k = 0; k < m; ++k) field = arclength_derivative(field, curve);
  return field;
}

}  // namespace csf
