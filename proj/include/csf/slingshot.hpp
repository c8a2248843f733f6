#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csf/curve.hpp"
#include "csf/flow.hpp"

namespace csf {

/// One decaying tail graph u(x), x >= b. `sign` is +1 for u+ (above the
/// axis) and -1 for u-.
struct TailGraph {
  enum class Form {
    exp_decay,    // A e^{-rate x}
    power_decay,  // A x^{-rate}
    tanh_exp,     // A tanh(sqrt x) e^{-rate x}
  };
  Form form = Form::exp_decay;
  double rate = 1.0;
  double amplitude = 1.0;
  int sign = 1;
  double b = 1.0;

  double value(double x) const;
  double slope(double x) const;
  /// magnitude |u|, i.e. value with the sign stripped
  double height(double x) const { return sign * value(x); }
};

const char* to_string(TailGraph::Form f) noexcept;

/// Model of the non-compact initial curve: a core on {x <= b} and two tail
/// graphs beyond. The curve is parametrized by sigma in R; sigma > 0 is the
/// upper branch, sigma = 0 the leftmost point, and the upper tail is the
/// image of sigma >= sigma_b.
struct OpenCurveSpec {
  enum class Core {
    tanh_hairpin,  // sigma -> (sigma^2, tanh(sigma) e^{-sigma^2})
    hermite,       // cubic Hermite core of x-extent core_depth, C1 to both tails
  };
  double a = -0.5;
  double b = 1.0;
  double c = 1.0;
  TailGraph upper;
  TailGraph lower;
  Core core = Core::hermite;
  double core_depth = 1.0;  // hermite core reaches x = b - core_depth
  std::string preset_id;

  double u_plus(double x) const { return upper.value(x); }
  double u_minus(double x) const { return lower.value(x); }

  Point2 point(double sigma) const;
  Point2 velocity(double sigma) const;
  /// parameter at which the core meets the upper tail (x = b)
  double sigma_b() const;
};

/// Known presets: "tanh-hairpin", "power-hairpin". Throws InvalidInput.
OpenCurveSpec preset(const std::string& name);

/// Frozen reference enclosed area of a preset, if one is recorded.
std::optional<double> preset_reference_area(const std::string& name);

/// Enclosed area of the full non-compact curve: core region by Green's
/// theorem plus the tail integral of u+ - u- over [b, inf).
double reference_area(const OpenCurveSpec& spec);

struct Clause {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct HypothesisReport {
  std::vector<Clause> clauses;
  bool all_pass() const;
  const Clause* find(const std::string& name) const;
};

HypothesisReport validate_hypotheses(const OpenCurveSpec& spec);

/// Polyline through Gamma_0 up to x = truncation_x, ordered from the upper
/// end through the leftmost point to the lower end. Vertices are at uniform
/// arclength spacing 1/resolution measured from sigma = 0, so different
/// truncations share their vertices.
OpenPolyline build_gamma0(const OpenCurveSpec& spec, double truncation_x, std::size_t resolution);

/// Truncation abscissa where both tails drop below `height`.
double tail_cutoff(const OpenCurveSpec& spec, double height = 1e-8);

struct CapParams {
  double bulge = 0.5;       // the cap reaches x = i + bulge
  double max_turn = 0.1;    // turning per edge on the tip
  double grading = 1.5;     // spacing growth from the tip back to gamma0's spacing
};

/// Closes Gamma_0 at x = i: keeps every gamma0 vertex with x <= i, follows
/// the tails on (i, i + bulge - r] and turns around on a half-ellipse tip
/// of radius r equal to the local half-width, with slope-matching
/// corrections so the join is C1. Throws InvalidInput when the result is
/// not embedded.
ClosedCurve cap(const OpenPolyline& gamma0, int i, const OpenCurveSpec& spec, const CapParams& params = {});

struct ApproximantFamily {
  OpenCurveSpec spec;
  std::size_t resolution = 128;
  std::vector<int> indices;
  std::vector<ClosedCurve> curves;
  OpenPolyline gamma0;  // sampled to the largest index plus one
};

ApproximantFamily build_family(const OpenCurveSpec& spec, std::span<const int> indices, std::size_t resolution,
                               const CapParams& cap_params = {});

/// Semi-implicit steps on an adaptive mesh fine enough to follow the caps
/// (cfl 0.9, max_turn 0.1, max_edge 0.05, max_dt 1e-5).
FlowParams slingshot_flow_params();

/// 1e-4, 2e-4, 5e-4, 1e-3, then 0.0025 k up to 0.05.
std::vector<double> default_t_grid();

/// One trajectory per family member on the common grid. Members run on
/// up to `threads` workers (0 = CSF_THREADS or hardware concurrency).
/// Errors are rethrown as FlowError prefixed with the index.
std::vector<Trajectory> run_family(const ApproximantFamily& family, std::span<const double> t_grid,
                                   const FlowParams& params, unsigned threads = 0);

struct ConvergenceReport {
  std::vector<int> indices;
  std::vector<double> times;  // the common grid without t = 0
  /// cauchy[k][j]: Hausdorff distance between members k and k+1 at times[j]
  std::vector<std::vector<double>> cauchy;
  std::vector<double> cauchy_max;  // max over times, per k
  /// directed distance sup_{p in Gamma^i_t} d(p, Gamma_0) for the largest i
  std::vector<double> distance_to_gamma0;
  struct EpsilonTime {
    double eps = 0.0;
    /// first sampled time where the distance reaches eps; nullopt if never
    std::optional<double> t_eps;
  };
  std::vector<EpsilonTime> eps_times;
};

ConvergenceReport convergence_report(std::span<const Trajectory> trajectories, std::span<const int> indices,
                                     const OpenPolyline& gamma0, std::span<const double> eps_list);

/// Area of the enclosed region intersected with {x >= x0}.
double halfplane_area(const ClosedCurve& curve, double x0);

struct TailDecayReport {
  double x0 = 0.0;
  double threshold = 0.0;  // pi - 8c/R
  double slack = 0.1;
  std::vector<double> times;
  std::vector<double> area;
  /// forward-difference slopes on intervals where A+ > 0 at both ends
  std::vector<double> slope_times;
  std::vector<double> slopes;
  bool pass = true;
};

/// Slopes of A+(t) = halfplane_area(curve_t, x0) against the Lemma bound
/// with R = 16c/pi, which gives threshold pi/2.
TailDecayReport tail_decay_rate(const Trajectory& traj, double x0, double c, double slack = 0.1);

struct ConfinementRow {
  double t = 0.0;
  int from_index = 0;
  double x_max = 0.0;
  double y_abs_max = 0.0;
  bool in_strip = true;
};

/// For every sample time, the smallest x such that all members lie in
/// [a, x] x [-c, c].
std::vector<ConfinementRow> confinement_boxes(std::span<const Trajectory> trajectories, std::span<const int> indices,
                                              const OpenCurveSpec& spec);

}  // namespace csf
