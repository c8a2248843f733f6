#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "csf/curve.hpp"

namespace csf::test {

inline ClosedCurve ellipse(std::size_t n, double a, double b, Point2 c = {0, 0}, double phase = 0.0) {
  std::vector<Point2> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + phase;
    v[k] = {c.x + a * std::cos(th), c.y + b * std::sin(th)};
  }
  return ClosedCurve(std::move(v));
}

inline ClosedCurve circle(std::size_t n, double r, Point2 c = {0, 0}, double phase = 0.0) {
  return ellipse(n, r, r, c, phase);
}

// Axis-aligned square [0,s]^2, each side split into `per_side` edges.
inline ClosedCurve square(double s = 1.0, std::size_t per_side = 2) {
  std::vector<Point2> v;
  const Point2 corners[4] = {{0, 0}, {s, 0}, {s, s}, {0, s}};
  for (int side = 0; side < 4; ++side) {
    const Point2 a = corners[side];
    const Point2 b = corners[(side + 1) % 4];
    for (std::size_t k = 0; k < per_side; ++k) {
      const double u = static_cast<double>(k) / static_cast<double>(per_side);
      v.push_back(a + u * (b - a));
    }
  }
  return ClosedCurve(std::move(v));
}

// Lemniscate-like figure eight; crosses itself at the origin.
inline std::vector<Point2> figure_eight(std::size_t n) {
  std::vector<Point2> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double th = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    v[k] = {std::sin(th), std::sin(th) * std::cos(th)};
  }
  return v;
}

// Stadium: two straight sides of length `len` joined by semicircles of radius r.
inline ClosedCurve stadium(double len, double r, std::size_t per_side, std::size_t per_arc) {
  std::vector<Point2> v;
  for (std::size_t k = 0; k < per_side; ++k) v.push_back({-len / 2 + len * k / per_side, -r});
  for (std::size_t k = 0; k < per_arc; ++k) {
    const double th = -std::numbers::pi / 2 + std::numbers::pi * k / per_arc;
    v.push_back({len / 2 + r * std::cos(th), r * std::sin(th)});
  }
  for (std::size_t k = 0; k < per_side; ++k) v.push_back({len / 2 - len * k / per_side, r});
  for (std::size_t k = 0; k < per_arc; ++k) {
    const double th = std::numbers::pi / 2 + std::numbers::pi * k / per_arc;
    v.push_back({-len / 2 + r * std::cos(th), r * std::sin(th)});
  }
  return ClosedCurve(std::move(v));
}

}  // namespace csf::test
