#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csf/curve.hpp"

namespace csf {

enum class Scheme { explicit_euler, semi_implicit };
enum class RemeshMode { uniform, adaptive };

struct FlowParams {
  double cfl = 0.4;
  double remesh_ratio = 1.5;
  std::size_t target_vertices = 256;
  Scheme scheme = Scheme::explicit_euler;
  double extinction_area = 1e-4;

  RemeshMode remesh = RemeshMode::uniform;
  // adaptive remeshing only
  double max_edge = 0.05;
  double max_turn = 0.1;
  double min_edge = 1e-6;
  std::size_t max_vertices = 200000;

  double max_dt = std::numeric_limits<double>::infinity();
  int max_retries = 5;

  /// Throws InvalidInput naming the first bad field.
  void validate() const;
};

struct FlowState {
  double t = 0.0;
  ClosedCurve curve;
  double area = 0.0;
  double length = 0.0;
  double max_abs_kappa = 0.0;
  std::size_t step_count = 0;

  /// Snapshot with derived fields computed from the curve.
  static FlowState make(ClosedCurve curve, double t = 0.0, std::size_t step_count = 0);
};

enum class Termination { extinct, time_reached, error };
const char* to_string(Termination t) noexcept;

struct Trajectory {
  /// The initial state followed by one state per requested sample time
  /// reached before termination.
  std::vector<FlowState> samples;
  Termination termination = Termination::time_reached;
  /// Last state computed (at extinction this is the first state below the
  /// area threshold).
  std::optional<FlowState> final_state;
  /// t_final + A_final / 2pi when extinct, NaN otherwise.
  double extinction_time = std::numeric_limits<double>::quiet_NaN();
  std::size_t retries = 0;
  std::string message;

  std::vector<double> sample_times() const;
};

/// Time step the scheme would take for this curve.
double stable_dt(std::span<const Point2> pts, const FlowParams& params);

/// One step: explicit curvature-vector update or semi-implicit
/// arclength-Laplacian solve, then remeshing if triggered. Throws FlowError
/// ("flow singularity or step too large") when the result is not embedded.
FlowState step(const FlowState& state, const FlowParams& params);
FlowState step(const FlowState& state, const FlowParams& params, double dt);

/// Evolves until t_end, recording states at sample_times (hit exactly by
/// shortening the step). Stops early when the area falls below
/// params.extinction_area. Throws FlowError when retries are exhausted.
Trajectory run_until(const ClosedCurve& initial, double t_end, std::span<const double> sample_times,
                     const FlowParams& params);

/// Radius of the shrinking circle, sqrt(r0^2 - 2t).
double circle_radius(double r0, double t);

/// Point of the translating grim reaper x = t - ln cos y.
Point2 grim_reaper_point(double y, double t);

double isoperimetric_ratio(const FlowState& state);

struct AvoidanceReport {
  std::vector<double> times;
  std::vector<double> min_distance;
  bool disjoint = true;
};

/// Minimum distance between the two flows at every common sample.
AvoidanceReport check_avoidance(const Trajectory& a, const Trajectory& b);

struct MonotonicityReport {
  std::vector<double> times;
  /// nullopt marks a sample skipped as non-generic.
  std::vector<std::optional<std::size_t>> counts;
  std::size_t skipped = 0;
  std::size_t violations = 0;
  bool non_increasing = true;
};

MonotonicityReport intersection_monotonicity(const Trajectory& a, const Trajectory& b);

}  // namespace csf
