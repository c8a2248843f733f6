#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "csf/curve.hpp"
#include "csf/point.hpp"

namespace csf {

/// Per-vertex curvature and unit normal of a closed polygon.
///
/// kappa[i] is positive where the curve bends toward the enclosed region and
/// normal[i] points into that region, so kappa[i] * normal[i] (the curvature
/// vector) does not depend on the traversal direction.
struct CurvatureField {
  std::vector<double> kappa;
  std::vector<Point2> normal;

  Point2 vector(std::size_t i) const noexcept { return kappa[i] * normal[i]; }
};

/// Signed curvature of the circle through a, b, c (Menger curvature);
/// positive for a left turn at b. Returns 0 when a == c.
double menger_curvature(Point2 a, Point2 b, Point2 c) noexcept;

/// Circumscribed-circle curvature at every vertex, normal perpendicular to the
/// chord joining the two neighbours. Throws DegenerateConfiguration naming the
/// vertex whose neighbours coincide.
CurvatureField curvature(const ClosedCurve& curve);

/// First arclength derivative of a per-vertex field by the three-point
/// formula on the non-uniform arclength grid (second order).
std::vector<double> arclength_derivative(std::span<const double> field, const ClosedCurve& curve);

/// m-th arclength derivative of curvature, m >= 0, by iterated differencing.
std::vector<double> curvature_derivative(const ClosedCurve& curve, int m);

/// Area of the enclosed region (absolute shoelace sum). Throws InvalidInput
/// for self-intersecting input.
double enclosed_area(const ClosedCurve& curve);

double arc_length(const ClosedCurve& curve) noexcept;

/// n vertices at equal arclength spacing along the input polygon, starting at
/// vertex 0. Throws InvalidInput for n < 8.
ClosedCurve resample(const ClosedCurve& curve, std::size_t n);

/// True iff no two non-adjacent segments meet and no adjacent pair folds back
/// onto itself. Exact predicates throughout.
bool is_embedded(PolylineView polyline);

/// For embedded input, min(reach, distance between the closest pair of
/// segments whose index gap is at least min_gap); nullopt when not embedded.
/// Pairs closer in index are still checked for contact, just not measured.
std::optional<double> embedded_clearance(PolylineView polyline, std::size_t min_gap, double reach);

/// Number of transversal crossings between two closed polygons.
///
/// Throws DegenerateConfiguration ("non-generic configuration") when the
/// polygons touch, share vertices, or cross at an angle below
/// `min_angle_rad`; callers perturb and retry.
std::size_t count_intersections(const ClosedCurve& a, const ClosedCurve& b,
                                double min_angle_rad = 1e-6);

/// Distance from a point to a polyline.
double point_polyline_distance(Point2 p, PolylineView polyline);

/// Minimum distance between two polylines; zero if they touch or cross.
double curve_distance(PolylineView a, PolylineView b);

/// sup over points of `from` of the distance to `to`, exact for polylines
/// (the maximum of the lower distance envelope is located along every edge).
double directed_hausdorff(PolylineView from, PolylineView to);

/// Symmetric Hausdorff distance between two polylines viewed as point sets.
double hausdorff_distance(PolylineView a, PolylineView b);

/// Copy with every vertex displaced by up to `relative * diameter` in each
/// coordinate, reproducibly from `seed`.
ClosedCurve perturbed(const ClosedCurve& curve, double relative, std::uint64_t seed);

/// Rigid motion applied to every vertex: rotation by `angle` about the
/// origin, then translation.
ClosedCurve rigid_transform(const ClosedCurve& curve, double angle, Point2 shift);

}  // namespace csf
