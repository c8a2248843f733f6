#include "csf/predicates.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace csf {
namespace {

constexpr double kEpsilon = std::numeric_limits<double>::epsilon() * 0.5;  // 2^-53
constexpr double kCcwErrBound = (3.0 + 16.0 * kEpsilon) * kEpsilon;

// Error-free transformations (Knuth two-sum, Dekker/FMA two-product).
inline void two_sum(double a, double b, double& s, double& e) noexcept {
  s = a + b;
  const double bv = s - a;
  const double av = s - bv;
  e = (a - av) + (b - bv);
}

inline void two_product(double a, double b, double& p, double& e) noexcept {
  p = a * b;
  e = std::fma(a, b, -p);
}

// Adds a scalar to a nonoverlapping expansion sorted by increasing magnitude,
// dropping zero components. Returns the new length.
std::size_t grow_expansion(const double* e, std::size_t n, double b, double* h) noexcept {
  double q = b;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    double err = 0.0;
    two_sum(q, e[i], sum, err);
    q = sum;
    if (err != 0.0) h[k++] = err;
  }
  if (q != 0.0 || k == 0) h[k++] = q;
  return k;
}

int exact_orient_sign(Point2 a, Point2 b, Point2 c) noexcept {
  // det = ax*by - ax*cy - cx*by - ay*bx + ay*cx + cy*bx
  std::array<double, 12> terms{};
  two_product(a.x, b.y, terms[0], terms[1]);
  two_product(-a.x, c.y, terms[2], terms[3]);
  two_product(-c.x, b.y, terms[4], terms[5]);
  two_product(-a.y, b.x, terms[6], terms[7]);
  two_product(a.y, c.x, terms[8], terms[9]);
  two_product(c.y, b.x, terms[10], terms[11]);

  std::array<double, 32> buf_a{};
  std::array<double, 32> buf_b{};
  double* cur = buf_a.data();
  double* next = buf_b.data();
  std::size_t len = 0;
  for (double t : terms) {
    if (t == 0.0) continue;
    len = grow_expansion(cur, len, t, next);
    std::swap(cur, next);
  }
  if (len == 0) return 0;
  const double top = cur[len - 1];
  return (top > 0.0) - (top < 0.0);
}

}  // namespace

double orient2d_fast(Point2 a, Point2 b, Point2 c) noexcept {
  return (a.x - c.x) * (b.y - c.y) - (a.y - c.y) * (b.x - c.x);
}

int orient2d_sign(Point2 a, Point2 b, Point2 c) noexcept {
  const double left = (a.x - c.x) * (b.y - c.y);
  const double right = (a.y - c.y) * (b.x - c.x);
  const double det = left - right;
  const double bound = kCcwErrBound * (std::abs(left) + std::abs(right));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return exact_orient_sign(a, b, c);
}

SegmentContact classify_segments(Point2 a0, Point2 a1, Point2 b0, Point2 b1) noexcept {
  if (!segment_bbox(a0, a1).overlaps(segment_bbox(b0, b1))) return SegmentContact::disjoint;
  const int o1 = orient2d_sign(a0, a1, b0);
  const int o2 = orient2d_sign(a0, a1, b1);
  const int o3 = orient2d_sign(b0, b1, a0);
  const int o4 = orient2d_sign(b0, b1, a1);
  if (o1 * o2 > 0 || o3 * o4 > 0) return SegmentContact::disjoint;
  if (o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return SegmentContact::proper;
  // At least one endpoint is collinear with the other segment. Touching only
  // counts when that endpoint actually lies on the other segment's extent.
  auto on_segment = [](Point2 p, Point2 q0, Point2 q1) {
    return std::min(q0.x, q1.x) <= p.x && p.x <= std::max(q0.x, q1.x) &&
           std::min(q0.y, q1.y) <= p.y && p.y <= std::max(q0.y, q1.y);
  };
  if ((o1 == 0 && on_segment(b0, a0, a1)) || (o2 == 0 && on_segment(b1, a0, a1)) ||
      (o3 == 0 && on_segment(a0, b0, b1)) || (o4 == 0 && on_segment(a1, b0, b1))) {
    return SegmentContact::degenerate;
  }
  return SegmentContact::disjoint;
}

}  // namespace csf
