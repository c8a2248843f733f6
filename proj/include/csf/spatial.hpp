#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "csf/curve.hpp"
#include "csf/point.hpp"

namespace csf {

/// Squared distance from p to the closed segment [a, b].
double point_segment_distance2(Point2 p, Point2 a, Point2 b) noexcept;
inline double point_segment_distance(Point2 p, Point2 a, Point2 b) noexcept {
  return std::sqrt(point_segment_distance2(p, a, b));
}
/// Distance between two closed segments (zero when they touch or cross).
double segment_segment_distance(Point2 a0, Point2 a1, Point2 b0, Point2 b1) noexcept;

/// Uniform bucket grid over the segments of a polyline.
///
/// The grid keeps a view of the polyline; the referenced points must outlive
/// it. Queries are const and may run concurrently.
class SegmentGrid {
 public:
  explicit SegmentGrid(PolylineView view);

  PolylineView view() const noexcept { return view_; }

  /// Indices of segments whose bounding boxes may overlap `box`, sorted and
  /// unique.
  std::vector<std::size_t> candidates(const BBox& box) const;
  /// Same, reusing the caller's buffer.
  void candidates(const BBox& box, std::vector<std::size_t>& out) const;

  /// Distance from p to the polyline; optionally reports the nearest segment.
  double nearest(Point2 p, std::size_t* segment = nullptr) const;

 private:
  std::size_t cell_index(std::int64_t ix, std::int64_t iy) const noexcept {
    return static_cast<std::size_t>(iy) * nx_ + static_cast<std::size_t>(ix);
  }
  std::int64_t clamp_x(double x) const noexcept;
  std::int64_t clamp_y(double y) const noexcept;

  PolylineView view_;
  BBox box_;
  double cell_ = 1.0;
  std::size_t nx_ = 1;
  std::size_t ny_ = 1;
  std::vector<std::uint32_t> offsets_;  // CSR layout: cell -> [offsets_[c], offsets_[c+1])
  std::vector<std::uint32_t> items_;
};

}  // namespace csf
