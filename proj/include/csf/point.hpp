#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace csf {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2& operator+=(Point2 o) noexcept {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Point2& operator-=(Point2 o) noexcept {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Point2& operator*=(double s) noexcept {
    x *= s;
    y *= s;
    return *this;
  }
  friend constexpr bool operator==(Point2, Point2) = default;
};

constexpr Point2 operator+(Point2 a, Point2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
constexpr Point2 operator-(Point2 a, Point2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
constexpr Point2 operator-(Point2 a) noexcept { return {-a.x, -a.y}; }
constexpr Point2 operator*(double s, Point2 a) noexcept { return {s * a.x, s * a.y}; }
constexpr Point2 operator*(Point2 a, double s) noexcept { return {s * a.x, s * a.y}; }
constexpr Point2 operator/(Point2 a, double s) noexcept { return {a.x / s, a.y / s}; }

constexpr double dot(Point2 a, Point2 b) noexcept { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) noexcept { return a.x * b.y - a.y * b.x; }
/// Counter-clockwise rotation by a quarter turn.
constexpr Point2 perp(Point2 a) noexcept { return {-a.y, a.x}; }
inline double norm(Point2 a) noexcept { return std::sqrt(a.x * a.x + a.y * a.y); }
constexpr double norm2(Point2 a) noexcept { return dot(a, a); }
inline double distance(Point2 a, Point2 b) noexcept { return norm(a - b); }
inline bool is_finite(Point2 p) noexcept { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Axis-aligned bounding box; empty when lo > hi.
struct BBox {
  Point2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point2 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

  void expand(Point2 p) noexcept {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
  BBox inflated(double d) const noexcept { return {{lo.x - d, lo.y - d}, {hi.x + d, hi.y + d}}; }
  bool empty() const noexcept { return lo.x > hi.x || lo.y > hi.y; }
  bool overlaps(const BBox& o) const noexcept {
    return lo.x <= o.hi.x && o.lo.x <= hi.x && lo.y <= o.hi.y && o.lo.y <= hi.y;
  }
  bool contains(Point2 p) const noexcept {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
  }
  double width() const noexcept { return hi.x - lo.x; }
  double height() const noexcept { return hi.y - lo.y; }
  double diameter() const noexcept { return empty() ? 0.0 : std::hypot(width(), height()); }
};

inline BBox segment_bbox(Point2 a, Point2 b) noexcept {
  BBox box;
  box.expand(a);
  box.expand(b);
  return box;
}

}  // namespace csf
