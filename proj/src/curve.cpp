#include "csf/curve.hpp"

#include <algorithm>
#include <string>

#include "csf/error.hpp"

namespace csf {

ClosedCurve::ClosedCurve(std::vector<Point2> vertices, Normalize mode)
    : vertices_(std::move(vertices)) {
  if (vertices_.size() < kMinVertices) {
    throw InvalidInput("closed curve needs at least " + std::to_string(kMinVertices) +
                       " vertices, got " + std::to_string(vertices_.size()));
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!is_finite(vertices_[i])) {
      throw InvalidInput("non-finite vertex at index " + std::to_string(i));
    }
    if (vertices_[i] == vertices_[next(i)]) {
      throw InvalidInput("consecutive vertices coincide at index " + std::to_string(i));
    }
  }
  const bool ccw = signed_area(vertices_) >= 0.0;
  if (mode == Normalize::ccw && !ccw) {
    std::reverse(vertices_.begin(), vertices_.end());
    orientation_ = Orientation::ccw;
  } else {
    orientation_ = ccw ? Orientation::ccw : Orientation::cw;
  }
}

ClosedCurve ClosedCurve::reversed() const {
  std::vector<Point2> v(vertices_.rbegin(), vertices_.rend());
  return ClosedCurve(std::move(v), Normalize::keep);
}

BBox ClosedCurve::bbox() const noexcept {
  BBox box;
  for (const auto& p : vertices_) box.expand(p);
  return box;
}

OpenPolyline::OpenPolyline(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw InvalidInput("open polyline needs at least 2 vertices");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!is_finite(vertices_[i])) {
      throw InvalidInput("non-finite vertex at index " + std::to_string(i));
    }
  }
}

BBox OpenPolyline::bbox() const noexcept {
  BBox box;
  for (const auto& p : vertices_) box.expand(p);
  return box;
}

double signed_area(std::span<const Point2> v) noexcept {
  const std::size_t n = v.size();
  if (n < 3) return 0.0;
  // Centering on the first vertex keeps the sum well conditioned for curves
  // far from the origin.
  const Point2 o = v[0];
  double twice = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) twice += cross(v[i] - o, v[i + 1] - o);
  return 0.5 * twice;
}

double polyline_length(PolylineView view) noexcept {
  double len = 0.0;
  for (std::size_t s = 0; s < view.segment_count(); ++s) {
    len += distance(view.segment_begin(s), view.segment_end(s));
  }
  return len;
}

}  // namespace csf
