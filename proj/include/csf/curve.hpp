#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "csf/point.hpp"

namespace csf {

enum class Orientation { ccw, cw };

/// Non-owning view of a polyline. Closed views connect the last vertex back
/// to the first.
struct PolylineView {
  std::span<const Point2> points;
  bool closed = true;

  std::size_t size() const noexcept { return points.size(); }
  std::size_t segment_count() const noexcept {
    if (points.size() < 2) return 0;
    return closed ? points.size() : points.size() - 1;
  }
  Point2 segment_begin(std::size_t s) const noexcept { return points[s]; }
  Point2 segment_end(std::size_t s) const noexcept {
    return points[s + 1 == points.size() ? 0 : s + 1];
  }
};

/// Ordered closed polygonal curve, the discrete analogue of a compact
/// embedded timeslice.
///
/// Construction checks the cheap invariants (vertex count, finiteness,
/// distinct consecutive vertices) and by default normalizes the traversal to
/// counter-clockwise. Embeddedness is not checked here; use is_embedded().
class ClosedCurve {
 public:
  static constexpr std::size_t kMinVertices = 8;

  enum class Normalize { ccw, keep };

  explicit ClosedCurve(std::vector<Point2> vertices, Normalize mode = Normalize::ccw);

  std::span<const Point2> vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const Point2& operator[](std::size_t i) const noexcept { return vertices_[i]; }
  Orientation orientation() const noexcept { return orientation_; }

  /// Index arithmetic modulo the vertex count.
  std::size_t next(std::size_t i) const noexcept { return i + 1 == size() ? 0 : i + 1; }
  std::size_t prev(std::size_t i) const noexcept { return i == 0 ? size() - 1 : i - 1; }

  PolylineView view() const noexcept { return {vertices_, true}; }
  operator PolylineView() const noexcept { return view(); }  // NOLINT(google-explicit-constructor)

  /// Same point set traversed backwards; orientation flag flips accordingly.
  ClosedCurve reversed() const;
  BBox bbox() const noexcept;

  /// Releases the vertex storage (for in-place integrators).
  std::vector<Point2> take_vertices() && noexcept { return std::move(vertices_); }

 private:
  std::vector<Point2> vertices_;
  Orientation orientation_ = Orientation::ccw;
};

/// Open polyline (e.g. a truncated non-compact curve); at least two vertices.
class OpenPolyline {
 public:
  explicit OpenPolyline(std::vector<Point2> vertices);

  std::span<const Point2> vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const Point2& operator[](std::size_t i) const noexcept { return vertices_[i]; }
  PolylineView view() const noexcept { return {vertices_, false}; }
  operator PolylineView() const noexcept { return view(); }  // NOLINT(google-explicit-constructor)
  BBox bbox() const noexcept;

 private:
  std::vector<Point2> vertices_;
};

/// Signed shoelace area; positive for counter-clockwise vertex order.
double signed_area(std::span<const Point2> vertices) noexcept;

/// Sum of segment lengths of the view.
double polyline_length(PolylineView view) noexcept;

}  // namespace csf
