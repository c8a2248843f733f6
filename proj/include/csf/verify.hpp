#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "csf/curve.hpp"
#include "csf/point.hpp"

namespace csf {

/// Orientation-preserving isometry T(p) = origin + rot(angle) p.
struct RigidFrame {
  double angle = 0.0;
  Point2 origin{};

  Point2 to_world(Point2 local) const noexcept;
  Point2 to_local(Point2 world) const noexcept;
};

/// F(R, D, r): the rectangle T([-R, R] x [0, D]) together with a ball
/// radius r. Construction enforces R > 0, D > 0 and 0 < r < D/2.
class BasicRectangle {
 public:
  BasicRectangle(RigidFrame frame, double R, double D, double r);

  const RigidFrame& frame() const noexcept { return frame_; }
  double R() const noexcept { return R_; }
  double D() const noexcept { return D_; }
  double r() const noexcept { return r_; }

  /// Closed rectangle membership.
  bool contains(Point2 world) const noexcept;
  /// World corners, counter-clockwise from T(-R, 0).
  std::array<Point2, 4> corners() const noexcept;

 private:
  RigidFrame frame_;
  double R_;
  double D_;
  double r_;
};

/// Same frame, D and r with the half-width narrowed to R/4.
BasicRectangle star(const BasicRectangle& rect);

struct BasicCheck {
  bool basic = false;
  std::string reason;  // empty when basic

  explicit operator bool() const noexcept { return basic; }
};

inline constexpr double kTransversality = 1e-6;

/// Both conditions of the definition on a grid x grid family of segments
/// from T(x1, 0) to T(x2, D) and on the r-balls at the grid points of the
/// bottom and top sides.
BasicCheck is_basic_rectangle(const BasicRectangle& rect, const ClosedCurve& curve, std::size_t grid = 32,
                              double min_angle_rad = kTransversality);

/// A strand of the curve inside a rectangle as the graph of g over the
/// frame's x axis.
struct GraphSlice {
  enum class Strand { single, upper, lower };
  Strand strand = Strand::single;
  std::vector<double> xs;  // strictly increasing
  std::vector<double> gs;
  /// secant slopes of the edges meeting [-R/2, R/2], at edge midpoints
  std::vector<double> slope_xs;
  std::vector<double> slopes;
};

const char* to_string(GraphSlice::Strand s) noexcept;

/// The curve inside the rectangle in frame coordinates: one slice, or two
/// tagged upper/lower when two strands pass through. Throws
/// DegenerateConfiguration "not graphical" for a strand that is not
/// x-monotone and InvalidInput when more than two strands meet the
/// rectangle.
std::vector<GraphSlice> extract_graph(const ClosedCurve& curve, const BasicRectangle& rect);

struct BoundCheck {
  bool pass = false;
  double value = 0.0;
  double bound = 0.0;

  explicit operator bool() const noexcept { return pass; }
};

/// sup |g'| on [-R/2, R/2] against 2D/R with 5% slack. Throws InvalidInput
/// when the slice does not span [-R/2, R/2].
BoundCheck check_gradient_bound(const GraphSlice& slice, const BasicRectangle& rect);

/// sqrt(r^2 - 2t) < g < D - sqrt(r^2 - 2t) up to two edge lengths of slack.
/// `value` is the smallest margin, `bound` the height sqrt(r^2 - 2t).
/// Throws InvalidInput ("beyond guaranteed window") for 2t > r^2.
BoundCheck check_height_bound(const GraphSlice& slice, const BasicRectangle& rect, double t);

/// sup of |d^m kappa / ds^m| over the vertices inside star(rect), m in 0..3.
/// Throws InvalidInput when fewer than 16 vertices lie inside star(rect).
double curvature_sup(const ClosedCurve& curve, const BasicRectangle& rect, int m);

struct CoverReport {
  enum class Kind { normal, fan };
  std::vector<BasicRectangle> rectangles;
  std::vector<Kind> kinds;
  /// arclength start of the uncovered point each rectangle was placed at
  std::vector<double> arc_positions;
  double coverage_fraction = 0.0;
  double tbar = 0.0;  // min r^2 / 2
};

const char* to_string(CoverReport::Kind k) noexcept;

/// Fraction of the curve's arclength inside the union of the open F*
/// rectangles.
double star_coverage(const ClosedCurve& curve, std::span<const BasicRectangle> rects);

/// Greedy walk along the curve. At the first uncovered point two candidates
/// are tried: a rectangle in the local normal frame with D from the normal
/// clearance and a fan rectangle from the deepest interior point through
/// the curve point. The candidate whose F* covers more new arclength wins.
/// r = min(2 r_min, clearance / 2) must reach r_min and R is the largest
/// half-width found to pass is_basic_rectangle. Throws
/// DegenerateConfiguration naming the arc position when neither candidate
/// exists.
CoverReport build_cover(const ClosedCurve& curve, double r_min, std::size_t grid = 32);

}  // namespace csf
