#include "csf/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "csf/error.hpp"
#include "csf/geometry.hpp"
#include "csf/remesh.hpp"

namespace csf {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Solves the cyclic tridiagonal system
//   a[i] x[i-1] + b[i] x[i] + c[i] x[i+1] = r[i]   (indices mod n)
// by the Sherman-Morrison correction of a plain Thomas solve.
class CyclicSolver {
 public:
  void solve(const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& c,
             std::vector<double>& rx, std::vector<double>& ry) {
    const std::size_t n = b.size();
    const double gamma = -b[0];
    bb_.assign(b.begin(), b.end());
    bb_[0] = b[0] - gamma;
    bb_[n - 1] = b[n - 1] - a[0] * c[n - 1] / gamma;
    u_.assign(n, 0.0);
    u_[0] = gamma;
    u_[n - 1] = c[n - 1];
    factor(a, c);
    thomas(a, u_);
    thomas(a, rx);
    thomas(a, ry);
    const double denom = 1.0 + u_[0] + a[0] * u_[n - 1] / gamma;
    const double fx = (rx[0] + a[0] * rx[n - 1] / gamma) / denom;
    const double fy = (ry[0] + a[0] * ry[n - 1] / gamma) / denom;
    for (std::size_t i = 0; i < n; ++i) {
      rx[i] -= fx * u_[i];
      ry[i] -= fy * u_[i];
    }
  }

 private:
  void factor(const std::vector<double>& a, const std::vector<double>& c) {
    const std::size_t n = bb_.size();
    cp_.resize(n);
    piv_.resize(n);
    // piv_ holds reciprocal pivots
    piv_[0] = 1.0 / bb_[0];
    cp_[0] = c[0] * piv_[0];
    for (std::size_t i = 1; i < n; ++i) {
      piv_[i] = 1.0 / (bb_[i] - a[i] * cp_[i - 1]);
      cp_[i] = c[i] * piv_[i];
    }
  }
  void thomas(const std::vector<double>& a, std::vector<double>& r) const {
    const std::size_t n = bb_.size();
    r[0] *= piv_[0];
    for (std::size_t i = 1; i < n; ++i) r[i] = (r[i] - a[i] * r[i - 1]) * piv_[i];
    for (std::size_t i = n - 1; i-- > 0;) r[i] -= cp_[i] * r[i + 1];
  }

  std::vector<double> bb_, u_, cp_, piv_;
};

// Scratch buffers for one evolving polygon.
struct Stepper {
  const FlowParams& params;
  std::vector<double> kappa;
  std::vector<Point2> kvec;
  std::vector<double> a, b, c, rx, ry, edge;
  CyclicSolver solver;

  explicit Stepper(const FlowParams& p) : params(p) {}

  double dt_for(std::span<const Point2> pts, double cfl) {
    curvature_vectors(pts, kappa, kvec);
    return dt_from_cache(pts, cfl);
  }

  double dt_from_cache(std::span<const Point2> pts, double cfl) const {
    const std::size_t n = pts.size();
    double dt = params.max_dt;
    if (params.scheme == Scheme::explicit_euler) {
      double hmin = INFINITY;
      for (std::size_t i = 0; i < n; ++i) hmin = std::min(hmin, distance(pts[i], pts[(i + 1) % n]));
      dt = std::min(dt, cfl * hmin * hmin / 2.0);
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        const double h = std::min(distance(pts[i], pts[(i + 1) % n]),
                                  distance(pts[i], pts[i == 0 ? n - 1 : i - 1]));
        // over-refined vertices do not shrink the step below the
        // max_turn/|kappa| accuracy scale
        const double k = std::abs(kappa[i]);
        if (k > 0.0) dt = std::min(dt, cfl * std::max(h, params.max_turn / k) / k);
      }
      if (!std::isfinite(dt)) {
        // flat everywhere; fall back to the diffusive limit
        double hmin = INFINITY;
        for (std::size_t i = 0; i < n; ++i) hmin = std::min(hmin, distance(pts[i], pts[(i + 1) % n]));
        dt = cfl * hmin * hmin / 2.0;
      }
    }
    return dt;
  }

  // Advances pts by dt using the cached curvature; returns the largest
  // vertex displacement.
  double advance(std::vector<Point2>& pts, double dt) {
    const std::size_t n = pts.size();
    double moved = 0.0;
    if (params.scheme == Scheme::explicit_euler) {
      for (std::size_t i = 0; i < n; ++i) {
        const Point2 d = dt * kvec[i];
        pts[i] += d;
        moved = std::max(moved, norm(d));
      }
      return moved;
    }
    a.resize(n);
    b.resize(n);
    c.resize(n);
    rx.resize(n);
    ry.resize(n);
    edge.resize(n);
    for (std::size_t i = 0; i < n; ++i) edge[i] = distance(pts[i], pts[i + 1 == n ? 0 : i + 1]);
    for (std::size_t i = 0; i < n; ++i) {
      const double hm = edge[i == 0 ? n - 1 : i - 1];
      const double hp = edge[i];
      const double w = 2.0 * dt / (hm + hp);
      a[i] = -w / hm;
      c[i] = -w / hp;
      b[i] = 1.0 + w / hm + w / hp;
      rx[i] = pts[i].x;
      ry[i] = pts[i].y;
    }
    solver.solve(a, b, c, rx, ry);
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 q{rx[i], ry[i]};
      moved = std::max(moved, distance(q, pts[i]));
      pts[i] = q;
    }
    return moved;
  }

  // Returns true when the mesh changed; `moved` is set for local changes
  // and left infinite after a global resample.
  bool remesh(std::vector<Point2>& pts, double& moved) {
    moved = INFINITY;
    if (params.remesh == RemeshMode::uniform) {
      if (edge_ratio(pts) <= params.remesh_ratio) return false;
      ClosedCurve c(std::move(pts), ClosedCurve::Normalize::keep);
      pts = std::move(resample_smooth(c, params.target_vertices)).take_vertices();
      return true;
    }
    AdaptiveSizing sz;
    sz.max_edge = params.max_edge;
    sz.max_turn = params.max_turn;
    sz.min_edge = params.min_edge;
    const bool changed = adapt_mesh(pts, sz, &moved);
    if (pts.size() > params.max_vertices) {
      throw FlowError("adaptive mesh exceeds max_vertices (" + std::to_string(params.max_vertices) + ")");
    }
    return changed;
  }
};

// Between full embeddedness checks, pairs of edges fewer than kWindow apart
// are covered by turning_windows_below_pi and pairs at least kGap apart by
// the measured clearance minus the accumulated displacement. One local
// remesh at most halves index gaps, so kWindow/2 > kGap keeps this valid
// across a single adapt_mesh call.
constexpr std::size_t kWindow = 20;
constexpr std::size_t kGap = 6;

std::optional<double> checked_clearance(const std::vector<Point2>& pts) {
  double hmin = INFINITY;
  for (std::size_t i = 0; i < pts.size(); ++i) hmin = std::min(hmin, distance(pts[i], pts[(i + 1) % pts.size()]));
  return embedded_clearance(PolylineView{pts, true}, kGap, 8.0 * hmin);
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

FlowState snapshot(const std::vector<Point2>& pts, double t, std::size_t steps) {
  return FlowState::make(ClosedCurve(pts, ClosedCurve::Normalize::keep), t, steps);
}

}  // namespace

void FlowParams::validate() const {
  if (!(cfl > 0.0 && cfl < 1.0)) throw InvalidInput("cfl must lie in (0, 1)");
  if (!(remesh_ratio > 1.0)) throw InvalidInput("remesh_ratio must exceed 1");
  if (target_vertices < ClosedCurve::kMinVertices) throw InvalidInput("target_vertices must be at least 8");
  if (!(extinction_area > 0.0)) throw InvalidInput("extinction_area must be positive");
  if (!(max_edge > 0.0) || !(min_edge > 0.0) || min_edge > max_edge) {
    throw InvalidInput("need 0 < min_edge <= max_edge");
  }
  if (!(max_turn > 0.0 && max_turn < 1.0)) throw InvalidInput("max_turn must lie in (0, 1)");
  if (!(max_dt > 0.0)) throw InvalidInput("max_dt must be positive");
  if (max_retries < 0) throw InvalidInput("max_retries must be non-negative");
}

FlowState FlowState::make(ClosedCurve curve, double t, std::size_t step_count) {
  const double area = std::abs(signed_area(curve.vertices()));
  const double length = arc_length(curve);
  std::vector<double> kappa;
  std::vector<Point2> kv;
  curvature_vectors(curve.vertices(), kappa, kv);
  return FlowState{t, std::move(curve), area, length, max_abs(kappa), step_count};
}

const char* to_string(Termination t) noexcept {
  switch (t) {
    case Termination::extinct: return "extinct";
    case Termination::time_reached: return "time_reached";
    case Termination::error: return "error";
  }
  return "?";
}

std::vector<double> Trajectory::sample_times() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.t);
  return out;
}

double stable_dt(std::span<const Point2> pts, const FlowParams& params) {
  Stepper st(params);
  return st.dt_for(pts, params.cfl);
}

FlowState step(const FlowState& state, const FlowParams& params) {
  return step(state, params, stable_dt(state.curve.vertices(), params));
}

FlowState step(const FlowState& state, const FlowParams& params, double dt) {
  params.validate();
  if (state.curve.orientation() != Orientation::ccw) throw InvalidInput("flow expects a counter-clockwise curve");
  if (!(dt > 0.0)) throw InvalidInput("time step must be positive");
  Stepper st(params);
  std::vector<Point2> pts(state.curve.vertices().begin(), state.curve.vertices().end());
  st.dt_for(pts, params.cfl);
  st.advance(pts, dt);
  for (const auto& p : pts) {
    if (!is_finite(p)) throw FlowError("flow singularity or step too large: non-finite vertex");
  }
  if (!is_embedded(PolylineView{pts, true})) throw FlowError("flow singularity or step too large");
  double moved = 0.0;
  st.remesh(pts, moved);
  if (!is_embedded(PolylineView{pts, true})) throw FlowError("flow singularity or step too large");
  return snapshot(pts, state.t + dt, state.step_count + 1);
}

Trajectory run_until(const ClosedCurve& initial, double t_end, std::span<const double> sample_times,
                     const FlowParams& params) {
  params.validate();
  if (!(t_end > 0.0)) throw InvalidInput("t_end must be positive");
  for (std::size_t k = 0; k < sample_times.size(); ++k) {
    if (!(sample_times[k] > 0.0) || sample_times[k] > t_end) {
      throw InvalidInput("sample times must lie in (0, t_end]");
    }
    if (k > 0 && !(sample_times[k] > sample_times[k - 1])) {
      throw InvalidInput("sample times must be strictly increasing");
    }
  }
  if (!is_embedded(initial)) throw InvalidInput("initial curve is not embedded");

  Trajectory traj;
  std::vector<Point2> pts(initial.vertices().begin(), initial.vertices().end());
  if (initial.orientation() == Orientation::cw) std::reverse(pts.begin(), pts.end());
  traj.samples.push_back(snapshot(pts, 0.0, 0));

  Stepper st(params);
  double t = 0.0;
  std::size_t steps = 0;
  std::size_t next_sample = 0;

  // last verified state
  std::vector<Point2> saved = pts;
  double saved_t = 0.0;
  std::size_t saved_steps = 0;
  std::size_t saved_sample = 0;
  double clearance = checked_clearance(pts).value_or(0.0);
  double drift = 0.0;
  bool remeshed = false;
  double cfl = params.cfl;
  int retries = 0;

  auto fail = [&](const std::string& why) {
    if (retries >= params.max_retries) {
      throw FlowError("flow singularity or step too large at t=" + std::to_string(t) + " after " +
                      std::to_string(retries) + " retries (" + why + ")");
    }
    ++retries;
    ++traj.retries;
    cfl *= 0.5;
    pts = saved;
    t = saved_t;
    steps = saved_steps;
    traj.samples.erase(traj.samples.begin() + static_cast<std::ptrdiff_t>(saved_sample + 1), traj.samples.end());
    next_sample = saved_sample;
    drift = 0.0;
    remeshed = false;
  };

  while (true) {
    const double area = std::abs(signed_area(pts));
    if (area < params.extinction_area) {
      traj.termination = Termination::extinct;
      traj.extinction_time = t + area / kTwoPi;
      traj.final_state = snapshot(pts, t, steps);
      break;
    }
    if (t >= t_end) {
      traj.termination = Termination::time_reached;
      traj.final_state = snapshot(pts, t, steps);
      break;
    }
    const double target = next_sample < sample_times.size() ? sample_times[next_sample] : t_end;
    double dt;
    try {
      dt = st.dt_for(pts, cfl);
    } catch (const DegenerateConfiguration&) {
      fail("collapsed vertex");
      continue;
    }
    bool landing = false;
    if (t + dt >= target) {
      dt = target - t;
      landing = true;
    }
    drift += st.advance(pts, dt);
    t = landing ? target : t + dt;
    ++steps;

    bool finite = true;
    for (const auto& p : pts) finite = finite && is_finite(p);
    if (!finite) {
      fail("non-finite vertex");
      continue;
    }
    bool recheck = false;
    try {
      double moved = 0.0;
      if (st.remesh(pts, moved)) {
        recheck = remeshed;
        remeshed = true;
        drift += moved;
      }
    } catch (const DegenerateConfiguration&) {
      fail("collapsed vertex");
      continue;
    }
    const bool record = landing && next_sample < sample_times.size();
    if (recheck || record || drift >= 0.25 * clearance || !turning_windows_below_pi(pts, kWindow)) {
      const auto c = checked_clearance(pts);
      if (!c) {
        fail("embeddedness lost");
        continue;
      }
      clearance = *c;
      drift = 0.0;
      remeshed = false;
      if (record) {
        traj.samples.push_back(snapshot(pts, t, steps));
        ++next_sample;
        cfl = params.cfl;
        retries = 0;
      }
      saved = pts;
      saved_t = t;
      saved_steps = steps;
      saved_sample = next_sample;
    }
  }
  return traj;
}

double circle_radius(double r0, double t) {
  if (!(2.0 * t < r0 * r0)) throw InvalidInput("circle extinct");
  return std::sqrt(r0 * r0 - 2.0 * t);
}

Point2 grim_reaper_point(double y, double t) {
  if (!(std::abs(y) < std::numbers::pi / 2)) throw InvalidInput("grim reaper profile needs |y| < pi/2");
  return {t - std::log(std::cos(y)), y};
}

double isoperimetric_ratio(const FlowState& state) {
  if (!(state.area > 0.0)) throw InvalidInput("isoperimetric ratio of an extinct state");
  return state.length * state.length / (2.0 * kTwoPi * state.area);
}

namespace {

std::size_t common_prefix(const Trajectory& a, const Trajectory& b) {
  const std::size_t n = std::min(a.samples.size(), b.samples.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (a.samples[k].t != b.samples[k].t) throw InvalidInput("trajectories are sampled on different grids");
  }
  return n;
}

}  // namespace

AvoidanceReport check_avoidance(const Trajectory& a, const Trajectory& b) {
  AvoidanceReport rep;
  const std::size_t n = common_prefix(a, b);
  for (std::size_t k = 0; k < n; ++k) {
    const double d = curve_distance(a.samples[k].curve, b.samples[k].curve);
    rep.times.push_back(a.samples[k].t);
    rep.min_distance.push_back(d);
    if (!(d > 0.0)) rep.disjoint = false;
  }
  return rep;
}

MonotonicityReport intersection_monotonicity(const Trajectory& a, const Trajectory& b) {
  MonotonicityReport rep;
  const std::size_t n = common_prefix(a, b);
  std::optional<std::size_t> last;
  for (std::size_t k = 0; k < n; ++k) {
    rep.times.push_back(a.samples[k].t);
    try {
      const std::size_t c = count_intersections(a.samples[k].curve, b.samples[k].curve);
      rep.counts.emplace_back(c);
      if (last && c > *last) ++rep.violations;
      last = c;
    } catch (const DegenerateConfiguration&) {
      rep.counts.emplace_back(std::nullopt);
      ++rep.skipped;
    }
  }
  rep.non_increasing = rep.violations == 0;
  return rep;
}

}  // namespace csf
