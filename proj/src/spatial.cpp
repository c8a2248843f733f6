#include "csf/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "csf/predicates.hpp"

namespace csf {

double point_segment_distance2(Point2 p, Point2 a, Point2 b) noexcept {
  const Point2 ab = b - a;
  const double len2 = norm2(ab);
  if (len2 == 0.0) return norm2(p - a);
  const double u = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return norm2(p - (a + u * ab));
}

double segment_segment_distance(Point2 a0, Point2 a1, Point2 b0, Point2 b1) noexcept {
  if (classify_segments(a0, a1, b0, b1) != SegmentContact::disjoint) return 0.0;
  const double d2 = std::min({point_segment_distance2(a0, b0, b1),
                              point_segment_distance2(a1, b0, b1),
                              point_segment_distance2(b0, a0, a1),
                              point_segment_distance2(b1, a0, a1)});
  return std::sqrt(d2);
}

SegmentGrid::SegmentGrid(PolylineView view) : view_(view) {
  const std::size_t m = view_.segment_count();
  double total = 0.0;
  for (const auto& p : view_.points) box_.expand(p);
  for (std::size_t s = 0; s < m; ++s) total += distance(view_.segment_begin(s), view_.segment_end(s));
  if (m == 0 || box_.empty()) {
    offsets_.assign(2, 0);
    return;
  }
  const double mean_edge = total / static_cast<double>(m);
  const double area = std::max(box_.width(), 1e-300) * std::max(box_.height(), 1e-300);
  // Cells about one mean edge long, but never more cells than segments.
  cell_ = std::max({mean_edge, std::sqrt(area / static_cast<double>(m)), 1e-300});
  nx_ = static_cast<std::size_t>(std::floor(box_.width() / cell_)) + 1;
  ny_ = static_cast<std::size_t>(std::floor(box_.height() / cell_)) + 1;

  std::vector<std::uint32_t> counts(nx_ * ny_ + 1, 0);
  auto for_cells = [&](std::size_t s, auto&& fn) {
    const BBox b = segment_bbox(view_.segment_begin(s), view_.segment_end(s));
    const auto x0 = clamp_x(b.lo.x), x1 = clamp_x(b.hi.x);
    const auto y0 = clamp_y(b.lo.y), y1 = clamp_y(b.hi.y);
    for (auto iy = y0; iy <= y1; ++iy)
      for (auto ix = x0; ix <= x1; ++ix) fn(cell_index(ix, iy));
  };
  for (std::size_t s = 0; s < m; ++s) for_cells(s, [&](std::size_t c) { ++counts[c + 1]; });
  for (std::size_t c = 1; c < counts.size(); ++c) counts[c] += counts[c - 1];
  offsets_ = counts;
  items_.resize(offsets_.back());
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t s = 0; s < m; ++s) {
    for_cells(s, [&](std::size_t c) { items_[fill[c]++] = static_cast<std::uint32_t>(s); });
  }
}

std::int64_t SegmentGrid::clamp_x(double x) const noexcept {
  const double f = std::floor((x - box_.lo.x) / cell_);
  return static_cast<std::int64_t>(std::clamp(f, 0.0, static_cast<double>(nx_ - 1)));
}

std::int64_t SegmentGrid::clamp_y(double y) const noexcept {
  const double f = std::floor((y - box_.lo.y) / cell_);
  return static_cast<std::int64_t>(std::clamp(f, 0.0, static_cast<double>(ny_ - 1)));
}

std::vector<std::size_t> SegmentGrid::candidates(const BBox& box) const {
  std::vector<std::size_t> out;
  candidates(box, out);
  return out;
}

void SegmentGrid::candidates(const BBox& box, std::vector<std::size_t>& out) const {
  out.clear();
  if (items_.empty() || !box.overlaps(box_)) return;
  const auto x0 = clamp_x(box.lo.x), x1 = clamp_x(box.hi.x);
  const auto y0 = clamp_y(box.lo.y), y1 = clamp_y(box.hi.y);
  for (auto iy = y0; iy <= y1; ++iy) {
    for (auto ix = x0; ix <= x1; ++ix) {
      const auto c = cell_index(ix, iy);
      for (auto k = offsets_[c]; k < offsets_[c + 1]; ++k) out.push_back(items_[k]);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

double SegmentGrid::nearest(Point2 p, std::size_t* segment) const {
  double best2 = std::numeric_limits<double>::infinity();
  std::size_t best_seg = 0;
  if (items_.empty()) {
    if (segment) *segment = 0;
    return best2;
  }
  const auto cx = clamp_x(p.x);
  const auto cy = clamp_y(p.y);
  // Cells in ring k lie at least (k - 1) * cell_ from the projection of p onto
  // the grid box, and p sees that projection at right angles.
  const double dx = std::max({box_.lo.x - p.x, 0.0, p.x - box_.hi.x});
  const double dy = std::max({box_.lo.y - p.y, 0.0, p.y - box_.hi.y});
  const double outside = std::hypot(dx, dy);
  const auto max_ring = static_cast<std::int64_t>(std::max(nx_, ny_));
  for (std::int64_t k = 0; k <= max_ring; ++k) {
    const double bound =
        std::hypot(outside, std::max<double>(0.0, static_cast<double>(k - 1)) * cell_);
    if (bound * bound > best2) break;
    for (auto iy = cy - k; iy <= cy + k; ++iy) {
      if (iy < 0 || iy >= static_cast<std::int64_t>(ny_)) continue;
      const bool edge_row = (iy == cy - k || iy == cy + k);
      for (auto ix = cx - k; ix <= cx + k; ix += (edge_row ? 1 : 2 * k)) {
        if (ix >= 0 && ix < static_cast<std::int64_t>(nx_)) {
          const auto c = cell_index(ix, iy);
          for (auto it = offsets_[c]; it < offsets_[c + 1]; ++it) {
            const std::size_t s = items_[it];
            const double d2 =
                point_segment_distance2(p, view_.segment_begin(s), view_.segment_end(s));
            if (d2 < best2 || (d2 == best2 && s < best_seg)) {
              best2 = d2;
              best_seg = s;
            }
          }
        }
        if (k == 0) break;
      }
    }
  }
  if (segment) *segment = best_seg;
  return std::sqrt(best2);
}

}  // namespace csf
