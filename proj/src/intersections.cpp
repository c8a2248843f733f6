#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "csf/error.hpp"
#include "csf/geometry.hpp"
#include "csf/predicates.hpp"
#include "csf/spatial.hpp"

namespace csf {
namespace {

bool adjacent(std::size_t s, std::size_t t, std::size_t m, bool closed) noexcept {
  if (s > t) std::swap(s, t);
  if (t == s + 1) return true;
  return closed && s == 0 && t == m - 1 && m > 2;
}

}  // namespace

namespace {

std::size_t index_gap(std::size_t s, std::size_t t, std::size_t m, bool closed) noexcept {
  const std::size_t d = s > t ? s - t : t - s;
  return closed ? std::min(d, m - d) : d;
}

// Sweep over segment boxes sorted along the longer axis of the curve's
// bounding box. Every pair whose boxes overlap is tested for contact. With
// `clearance` set, pairs at index gap >= min_gap whose boxes come within
// `reach` are also measured, and the reported value is the smaller of the
// reach and the closest such pair: no unmeasured pair can be closer.
bool embedded_sweep(PolylineView poly, double* clearance, std::size_t min_gap, double reach) {
  const std::size_t m = poly.segment_count();
  if (clearance) *clearance = std::numeric_limits<double>::infinity();
  if (m == 0) return true;
  for (std::size_t s = 0; s < m; ++s) {
    if (poly.segment_begin(s) == poly.segment_end(s)) return false;
  }
  BBox all;
  for (const auto& p : poly.points) all.expand(p);
  const bool along_x = all.width() >= all.height();
  const double pad = clearance ? reach : 0.0;
  if (clearance) *clearance = reach;

  struct Item {
    double lo, hi;  // sweep axis, padded
    std::size_t seg;
  };
  std::vector<Item> items(m);
  std::vector<BBox> boxes(m);
  for (std::size_t s = 0; s < m; ++s) {
    boxes[s] = segment_bbox(poly.segment_begin(s), poly.segment_end(s));
    const double lo = along_x ? boxes[s].lo.x : boxes[s].lo.y;
    const double hi = along_x ? boxes[s].hi.x : boxes[s].hi.y;
    items[s] = {lo - pad, hi + pad, s};
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.seg < b.seg);
  });

  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t s = items[k].seg;
    const BBox& bs = boxes[s];
    const BBox padded = bs.inflated(pad);
    for (std::size_t q = k + 1; q < m && items[q].lo <= items[k].hi; ++q) {
      const std::size_t t = items[q].seg;
      const BBox& bt = boxes[t];
      if (!padded.overlaps(bt.inflated(pad))) continue;
      const Point2 a0 = poly.segment_begin(s), a1 = poly.segment_end(s);
      const Point2 b0 = poly.segment_begin(t), b1 = poly.segment_end(t);
      if (adjacent(s, t, m, poly.closed)) {
        if (!bs.overlaps(bt)) continue;
        // Shared vertex; the pair only overlaps when it folds back on itself.
        const std::size_t first = (t == s + 1 || (s + 1 == m && t == 0)) ? s : t;
        const std::size_t second = first == s ? t : s;
        const Point2 pre = poly.segment_begin(first);
        const Point2 mid = poly.segment_end(first);
        const Point2 post = poly.segment_end(second);
        if (orient2d_sign(pre, mid, post) == 0 && dot(mid - pre, post - mid) < 0.0) return false;
        continue;
      }
      if (clearance && index_gap(s, t, m, poly.closed) >= min_gap) {
        const double d = segment_segment_distance(a0, a1, b0, b1);
        if (d == 0.0) return false;
        *clearance = std::min(*clearance, d);
      } else if (bs.overlaps(bt) && classify_segments(a0, a1, b0, b1) != SegmentContact::disjoint) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

bool is_embedded(PolylineView poly) { return embedded_sweep(poly, nullptr, 0, 0.0); }

std::optional<double> embedded_clearance(PolylineView poly, std::size_t min_gap, double reach) {
  double c = 0.0;
  if (!embedded_sweep(poly, &c, std::max<std::size_t>(min_gap, 2), reach)) return std::nullopt;
  return c;
}

std::size_t count_intersections(const ClosedCurve& a, const ClosedCurve& b, double min_angle_rad) {
  const double min_sin = std::sin(min_angle_rad);
  const SegmentGrid grid(b);
  const PolylineView va = a;
  const PolylineView vb = b;
  std::size_t count = 0;
  for (std::size_t s = 0; s < va.segment_count(); ++s) {
    const Point2 a0 = va.segment_begin(s);
    const Point2 a1 = va.segment_end(s);
    for (std::size_t t : grid.candidates(segment_bbox(a0, a1))) {
      const Point2 b0 = vb.segment_begin(t);
      const Point2 b1 = vb.segment_end(t);
      switch (classify_segments(a0, a1, b0, b1)) {
        case SegmentContact::disjoint:
          break;
        case SegmentContact::degenerate:
          throw DegenerateConfiguration("non-generic configuration: curves touch at segment " +
                                            std::to_string(s),
                                        s);
        case SegmentContact::proper: {
          const Point2 da = a1 - a0;
          const Point2 db = b1 - b0;
          if (std::abs(cross(da, db)) < min_sin * norm(da) * norm(db)) {
            throw DegenerateConfiguration(
                "non-generic configuration: crossing below transversality tolerance at segment " +
                    std::to_string(s),
                s);
          }
          ++count;
          break;
        }
      }
    }
  }
  return count;
}

double point_polyline_distance(Point2 p, PolylineView poly) {
  double best2 = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < poly.segment_count(); ++s) {
    best2 = std::min(best2, point_segment_distance2(p, poly.segment_begin(s), poly.segment_end(s)));
  }
  if (poly.segment_count() == 0 && poly.size() == 1) best2 = norm2(p - poly.points[0]);
  return std::sqrt(best2);
}

double curve_distance(PolylineView a, PolylineView b) {
  const SegmentGrid grid_b(b);
  for (std::size_t s = 0; s < a.segment_count(); ++s) {
    const Point2 a0 = a.segment_begin(s);
    const Point2 a1 = a.segment_end(s);
    for (std::size_t t : grid_b.candidates(segment_bbox(a0, a1))) {
      if (classify_segments(a0, a1, b.segment_begin(t), b.segment_end(t)) !=
          SegmentContact::disjoint) {
        return 0.0;
      }
    }
  }
  // Without crossings the minimum is attained at a vertex of one polyline.
  const SegmentGrid grid_a(a);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : a.points) best = std::min(best, grid_b.nearest(p));
  for (const auto& p : b.points) best = std::min(best, grid_a.nearest(p));
  return best;
}

}  // namespace csf
