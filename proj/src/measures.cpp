#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "csf/error.hpp"
#include "csf/geometry.hpp"

namespace csf {

double enclosed_area(const ClosedCurve& curve) {
  if (!is_embedded(curve)) throw InvalidInput("enclosed_area: curve is self-intersecting");
  return std::abs(signed_area(curve.vertices()));
}

double arc_length(const ClosedCurve& curve) noexcept { return polyline_length(curve); }

ClosedCurve resample(const ClosedCurve& curve, std::size_t n) {
  if (n < ClosedCurve::kMinVertices) {
    throw InvalidInput("resample: need at least 8 vertices, requested " + std::to_string(n));
  }
  const std::size_t m = curve.size();
  std::vector<double> cumulative(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    cumulative[i + 1] = cumulative[i] + distance(curve[i], curve[curve.next(i)]);
  }
  const double total = cumulative[m];
  std::vector<Point2> out;
  out.reserve(n);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = total * static_cast<double>(k) / static_cast<double>(n);
    while (seg + 1 < m && cumulative[seg + 1] <= s) ++seg;
    const double len = cumulative[seg + 1] - cumulative[seg];
    const double u = len > 0.0 ? (s - cumulative[seg]) / len : 0.0;
    const Point2 a = curve[seg];
    const Point2 b = curve[curve.next(seg)];
    out.push_back(u == 0.0 ? a : a + u * (b - a));
  }
  return ClosedCurve(std::move(out),
                     curve.orientation() == Orientation::ccw ? ClosedCurve::Normalize::ccw
                                                             : ClosedCurve::Normalize::keep);
}

ClosedCurve perturbed(const ClosedCurve& curve, double relative, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double scale = relative * curve.bbox().diameter();
  std::vector<Point2> v(curve.vertices().begin(), curve.vertices().end());
  for (auto& p : v) {
    const double dx = unit(rng);
    const double dy = unit(rng);
    p += Point2{dx * scale, dy * scale};
  }
  return ClosedCurve(std::move(v));
}

ClosedCurve rigid_transform(const ClosedCurve& curve, double angle, Point2 shift) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  std::vector<Point2> v;
  v.reserve(curve.size());
  for (const auto& p : curve.vertices()) {
    v.push_back(Point2{c * p.x - s * p.y, s * p.x + c * p.y} + shift);
  }
  return ClosedCurve(std::move(v), ClosedCurve::Normalize::keep);
}

}  // namespace csf
