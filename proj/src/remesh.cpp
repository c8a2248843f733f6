#include "csf/remesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "csf/error.hpp"
#include "csf/geometry.hpp"
#include "csf/spatial.hpp"

namespace csf {

void curvature_vectors(std::span<const Point2> pts, std::vector<double>& kappa,
                       std::vector<Point2>& kvec) {
  const std::size_t n = pts.size();
  kappa.resize(n);
  kvec.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = pts[i == 0 ? n - 1 : i - 1];
    const Point2 b = pts[i];
    const Point2 c = pts[i + 1 == n ? 0 : i + 1];
    const Point2 chord = c - a;
    const double len = norm(chord);
    if (len == 0.0) throw DegenerateConfiguration("neighbours of a vertex coincide", i);
    const double k = 2.0 * cross(b - a, c - b) / (norm(b - a) * norm(c - b) * len);
    kappa[i] = k;
    kvec[i] = (k / len) * perp(chord);
  }
}

double edge_ratio(std::span<const Point2> pts) noexcept {
  double lo = INFINITY, hi = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double h = distance(pts[i], pts[i + 1 == pts.size() ? 0 : i + 1]);
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  return hi / lo;
}

bool turning_windows_below_pi(std::span<const Point2> pts, std::size_t window) noexcept {
  const std::size_t n = pts.size();
  if (window < 2) return true;
  const std::size_t w = std::min(window - 1, n);  // interior vertices of a run
  std::vector<double> turn(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = pts[i == 0 ? n - 1 : i - 1];
    const Point2 b = pts[i];
    const Point2 c = pts[i + 1 == n ? 0 : i + 1];
    const Point2 u = b - a, v = c - b;
    if (dot(u, v) <= 0.0) return false;
    // asin(s) <= s + (pi/2 - 1) s^3 on [0, 1]
    const double sn = std::min(1.0, std::abs(cross(u, v)) / std::sqrt(norm2(u) * norm2(v)));
    turn[i] = sn + (0.5 * std::numbers::pi - 1.0) * sn * sn * sn;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < w; ++i) sum += turn[i];
  for (std::size_t i = 0; i < n; ++i) {
    if (sum >= std::numbers::pi) return false;
    sum += turn[(i + w) % n] - turn[i];
  }
  return true;
}

namespace {

Point2 arc_point(Point2 a, Point2 b, Point2 ka, Point2 kb, double u) {
  const double l2 = norm2(b - a);
  Point2 offset = (0.5 * l2 * u * (1.0 - u)) * ((1.0 - u) * ka + u * kb);
  // never bend further than a quarter of the chord
  const double cap = 0.25 * std::sqrt(l2);
  const double len = norm(offset);
  if (len > cap) offset = (cap / len) * offset;
  return a + u * (b - a) - offset;
}

}  // namespace

ClosedCurve resample_smooth(const ClosedCurve& curve, std::size_t n) {
  if (n < ClosedCurve::kMinVertices) throw InvalidInput("resample: need at least 8 vertices");
  const auto pts = curve.vertices();
  const std::size_t m = pts.size();
  std::vector<double> kappa;
  std::vector<Point2> kv;
  curvature_vectors(pts, kappa, kv);
  if (curve.orientation() == Orientation::cw) {
    for (auto& k : kv) k = -1.0 * k;
  }
  std::vector<double> cum(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) cum[i + 1] = cum[i] + distance(pts[i], pts[(i + 1) % m]);
  const double total = cum[m];
  std::vector<Point2> out(n);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = total * static_cast<double>(k) / static_cast<double>(n);
    while (seg + 1 < m && cum[seg + 1] <= s) ++seg;
    const double len = cum[seg + 1] - cum[seg];
    const double u = len > 0.0 ? (s - cum[seg]) / len : 0.0;
    const std::size_t j = (seg + 1) % m;
    out[k] = u == 0.0 ? pts[seg] : arc_point(pts[seg], pts[j], kv[seg], kv[j], u);
  }
  return ClosedCurve(std::move(out), ClosedCurve::Normalize::keep);
}

bool adapt_mesh(std::vector<Point2>& pts, const AdaptiveSizing& sz, double* moved) {
  const std::size_t n = pts.size();
  std::vector<double> kappa;
  std::vector<Point2> kv;
  curvature_vectors(pts, kappa, kv);

  std::vector<double> target(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = std::abs(kappa[i]);
    target[i] = std::clamp(k > 0.0 ? sz.max_turn / k : sz.max_edge, sz.min_edge, sz.max_edge);
  }
  // limit the size jump between neighbours; two laps settle the cyclic wrap
  for (int lap = 0; lap < 2; ++lap) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t p = i == 0 ? n - 1 : i - 1;
      target[i] = std::min(target[i], sz.grading * target[p]);
    }
    for (std::size_t i = n; i-- > 0;) {
      const std::size_t q = i + 1 == n ? 0 : i + 1;
      target[i] = std::min(target[i], sz.grading * target[q]);
    }
  }

  auto edge_target = [&](std::size_t i) { return std::min(target[i], target[i + 1 == n ? 0 : i + 1]); };
  auto edge_len = [&](std::size_t i) { return distance(pts[i], pts[i + 1 == n ? 0 : i + 1]); };

  std::vector<char> drop(n, 0);
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t p = i == 0 ? n - 1 : i - 1;
    if (drop[p] || (i + 1 == n && drop[0])) continue;
    if (n - dropped <= 2 * ClosedCurve::kMinVertices) break;
    const double joined = edge_len(p) + edge_len(i);
    if (joined < 0.6 * std::min(edge_target(p), edge_target(i))) {
      drop[i] = 1;
      ++dropped;
    }
  }

  bool changed = dropped > 0;
  for (std::size_t i = 0; i < n && !changed; ++i) {
    const double len = edge_len(i);
    changed = len > 1.5 * edge_target(i) && len >= 2.0 * sz.min_edge;
  }
  if (moved) *moved = 0.0;
  if (!changed) return false;
  double shift = 0.0;
  std::vector<Point2> out;
  out.reserve(n + n / 4);
  for (std::size_t i = 0; i < n; ++i) {
    if (drop[i]) {
      const Point2 a = pts[i == 0 ? n - 1 : i - 1];
      const Point2 b = pts[i + 1 == n ? 0 : i + 1];
      shift = std::max(shift, point_segment_distance(pts[i], a, b));
      continue;
    }
    out.push_back(pts[i]);
    const std::size_t j = i + 1 == n ? 0 : i + 1;
    if (drop[j]) continue;
    const double len = edge_len(i);
    const double h = edge_target(i);
    if (len > 1.5 * h && len >= 2.0 * sz.min_edge) {
      out.push_back(arc_point(pts[i], pts[j], kv[i], kv[j], 0.5));
      shift = std::max(shift, point_segment_distance(out.back(), pts[i], pts[j]));
    }
  }
  pts = std::move(out);
  if (moved) *moved = shift;
  return true;
}

}  // namespace csf
