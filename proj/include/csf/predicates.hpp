#pragma once

#include "csf/point.hpp"

namespace csf {

/// Twice the signed area of triangle (a, b, c), evaluated in floating point.
/// Positive for a counter-clockwise turn.
double orient2d_fast(Point2 a, Point2 b, Point2 c) noexcept;

/// Exact sign of orient2d: +1 counter-clockwise, -1 clockwise, 0 collinear.
/// A static error-bound filter handles the common case; near-degenerate
/// inputs fall back to exact expansion arithmetic.
int orient2d_sign(Point2 a, Point2 b, Point2 c) noexcept;

/// Relationship between two closed segments, decided with exact orientation
/// signs.
enum class SegmentContact {
  disjoint,
  proper,      ///< interiors cross at a single point
  degenerate,  ///< touching, collinear overlap or an endpoint on the other segment
};

SegmentContact classify_segments(Point2 a0, Point2 a1, Point2 b0, Point2 b1) noexcept;

}  // namespace csf
