#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "csf/curve.hpp"

namespace csf {

/// Menger curvature and curvature vector at every vertex of a
/// counter-clockwise polygon, written into caller-owned buffers.
void curvature_vectors(std::span<const Point2> pts, std::vector<double>& kappa,
                       std::vector<Point2>& kvec);

/// max edge / min edge.
double edge_ratio(std::span<const Point2> pts) noexcept;

/// True when every run of `window` consecutive edges turns by less than pi
/// in total and never turns by a right angle or more at one vertex. Such
/// runs are simple, so no two edges less than `window` apart can meet.
bool turning_windows_below_pi(std::span<const Point2> pts, std::size_t window) noexcept;

/// Equal-arclength resampling to n vertices that places each new vertex on
/// the circle through the old edge, interpolating the curvature vector. The
/// area change is O(h^4) per resample instead of the O(h^2) of linear
/// interpolation. Input must be counter-clockwise.
ClosedCurve resample_smooth(const ClosedCurve& curve, std::size_t n);

struct AdaptiveSizing {
  double max_edge = 0.05;
  double max_turn = 0.1;  // target turning angle per edge: h* = max_turn / |kappa|
  double min_edge = 1e-6;
  double grading = 1.5;   // max ratio of neighbouring target sizes
};

/// Local refinement and coarsening towards h* = clamp(max_turn/|kappa|,
/// min_edge, max_edge): long edges are split once at the curvature-corrected
/// midpoint, vertices whose two edges are both short are removed (never two
/// neighbours in one call). Returns
/// false (and leaves pts alone) when the mesh already conforms.
/// `moved` receives the Hausdorff distance between the old and new polygon.
bool adapt_mesh(std::vector<Point2>& pts, const AdaptiveSizing& sizing, double* moved = nullptr);

}  // namespace csf
