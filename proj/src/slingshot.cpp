#include "csf/slingshot.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "csf/error.hpp"
#include "csf/geometry.hpp"
#include "csf/parallel.hpp"

namespace csf {
namespace {

constexpr double kPi = std::numbers::pi;

double sech2(double s) {
  const double c = std::cosh(s);
  return 1.0 / (c * c);
}

}  // namespace

// ---------------------------------------------------------------------------
// tails and the parametrized curve

double TailGraph::value(double x) const {
  double m = 0.0;
  switch (form) {
    case Form::exp_decay: m = amplitude * std::exp(-rate * x); break;
    case Form::power_decay: m = amplitude * std::pow(x, -rate); break;
    case Form::tanh_exp: m = amplitude * std::tanh(std::sqrt(x)) * std::exp(-rate * x); break;
  }
  return sign * m;
}

double TailGraph::slope(double x) const {
  double m = 0.0;
  switch (form) {
    case Form::exp_decay: m = -rate * amplitude * std::exp(-rate * x); break;
    case Form::power_decay: m = -rate * amplitude * std::pow(x, -rate - 1.0); break;
    case Form::tanh_exp: {
      const double r = std::sqrt(x);
      const double e = std::exp(-rate * x);
      m = amplitude * e * (sech2(r) / (2.0 * r) - rate * std::tanh(r));
      break;
    }
  }
  return sign * m;
}

const char* to_string(TailGraph::Form f) noexcept {
  switch (f) {
    case TailGraph::Form::exp_decay: return "exp_decay";
    case TailGraph::Form::power_decay: return "power_decay";
    case TailGraph::Form::tanh_exp: return "tanh_exp";
  }
  return "?";
}

double OpenCurveSpec::sigma_b() const { return core == Core::tanh_hairpin ? std::sqrt(b) : 1.0; }

Point2 OpenCurveSpec::point(double s) const {
  if (core == Core::tanh_hairpin) return {s * s, std::tanh(s) * std::exp(-s * s)};
  const double half = 2.0 * core_depth;  // dx/dsigma on the tails
  if (s >= 1.0) {
    const double x = b + half * (s - 1.0);
    return {x, u_plus(x)};
  }
  if (s <= -1.0) {
    const double x = b + half * (-1.0 - s);
    return {x, u_minus(x)};
  }
  const double L = 4.0 * core_depth;
  const double t = 0.5 * (s + 1.0);
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t, h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  const double y = u_minus(b) * h00 + u_plus(b) * h01 - L * lower.slope(b) * h10 + L * upper.slope(b) * h11;
  return {b - L * t * (1.0 - t), y};
}

Point2 OpenCurveSpec::velocity(double s) const {
  if (core == Core::tanh_hairpin) {
    const double e = std::exp(-s * s);
    return {2.0 * s, sech2(s) * e - 2.0 * s * std::tanh(s) * e};
  }
  const double half = 2.0 * core_depth;
  if (s >= 1.0) {
    const double x = b + half * (s - 1.0);
    return {half, half * upper.slope(x)};
  }
  if (s <= -1.0) {
    const double x = b + half * (-1.0 - s);
    return {-half, -half * lower.slope(x)};
  }
  const double L = 4.0 * core_depth;
  const double t = 0.5 * (s + 1.0);
  const double t2 = t * t;
  const double d00 = 6 * t2 - 6 * t, d10 = 3 * t2 - 4 * t + 1, d01 = -6 * t2 + 6 * t, d11 = 3 * t2 - 2 * t;
  const double dy = u_minus(b) * d00 + u_plus(b) * d01 - L * lower.slope(b) * d10 + L * upper.slope(b) * d11;
  // d/dsigma = 1/2 d/dt
  return {0.5 * (-L * (1.0 - 2.0 * t)), 0.5 * dy};
}

OpenCurveSpec preset(const std::string& name) {
  OpenCurveSpec s;
  s.preset_id = name;
  if (name == "tanh-hairpin") {
    s.a = -0.5;
    s.b = 1.0;
    s.c = 1.0;
    s.core = OpenCurveSpec::Core::tanh_hairpin;
    s.upper = {TailGraph::Form::tanh_exp, 1.0, 1.0, +1, 1.0};
    s.lower = {TailGraph::Form::tanh_exp, 1.0, 1.0, -1, 1.0};
    return s;
  }
  if (name == "power-hairpin") {
    s.a = -0.5;
    s.b = 1.0;
    s.c = 1.0;
    s.core = OpenCurveSpec::Core::hermite;
    s.core_depth = 1.0;
    s.upper = {TailGraph::Form::power_decay, 2.0, 0.3, +1, 1.0};
    s.lower = {TailGraph::Form::power_decay, 2.0, 0.3, -1, 1.0};
    return s;
  }
  throw InvalidInput("unknown preset '" + name + "' (known: tanh-hairpin, power-hairpin)");
}

std::optional<double> preset_reference_area(const std::string& name) {
  // 2 * int_0^inf tanh(sqrt x) e^{-x} dx, 30-digit quadrature
  if (name == "tanh-hairpin") return 1.2873752250014393;
  return std::nullopt;
}

namespace {

double tail_integral(const OpenCurveSpec& spec) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [&](double x) { return spec.u_plus(x) - spec.u_minus(x); };
  double err = 0.0;
  const double v = integrator.integrate([&](double u) { return f(spec.b + u); }, 0.0,
                                        std::numeric_limits<double>::infinity(), 1e-13, &err);
  if (!std::isfinite(v) || err > 1e-8 * std::max(1.0, std::abs(v))) {
    throw InvalidInput("tail integral does not converge");
  }
  return v;
}

}  // namespace

double reference_area(const OpenCurveSpec& spec) {
  using boost::math::quadrature::gauss_kronrod;
  const double sb = spec.sigma_b();
  // Green's theorem along sigma (lower branch to upper), closed by the
  // vertical segment x = b; this order is clockwise around the region.
  auto green = [&](double s) {
    const Point2 p = spec.point(s);
    const Point2 v = spec.velocity(s);
    return 0.5 * (p.x * v.y - p.y * v.x);
  };
  double core = 0.0;
  for (double lo : {-sb, 0.0}) core += gauss_kronrod<double, 31>::integrate(green, lo, lo + sb, 15, 1e-14);
  core += 0.5 * spec.b * (spec.u_minus(spec.b) - spec.u_plus(spec.b));
  return std::abs(core) + tail_integral(spec);
}

// ---------------------------------------------------------------------------
// hypotheses

bool HypothesisReport::all_pass() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.pass; });
}

const Clause* HypothesisReport::find(const std::string& name) const {
  for (const auto& c : clauses) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

HypothesisReport validate_hypotheses(const OpenCurveSpec& spec) {
  HypothesisReport rep;
  auto add = [&](std::string name, bool pass, std::string detail) {
    rep.clauses.push_back({std::move(name), pass, std::move(detail)});
  };
  add("a+1 < b", spec.a + 1.0 < spec.b, "a=" + std::to_string(spec.a) + " b=" + std::to_string(spec.b));
  add("c > 0", spec.c > 0.0, "c=" + std::to_string(spec.c));

  // log-spaced abscissae on [b, b + 1e12]
  std::vector<double> xs;
  for (int k = 0; k <= 480; ++k) xs.push_back(spec.b + std::expm1(std::log1p(1e12) * k / 480.0));

  // exponential tails underflow long before 1e12, so positivity is checked
  // on a shorter range
  bool positive = true;
  for (int k = 0; k <= 600; ++k) {
    const double x = spec.b + k;
    positive = positive && spec.u_plus(x) > 0.0 && spec.u_minus(x) < 0.0;
  }
  add("tail positivity", positive, "u+ > 0 > u- on [b, b+600]");

  bool decreasing = true;
  for (const TailGraph* g : {&spec.upper, &spec.lower}) {
    for (std::size_t k = 1; k < xs.size(); ++k) {
      const double h0 = g->height(xs[k - 1]), h1 = g->height(xs[k]);
      if (!(h1 < h0) && h1 > 0.0) decreasing = false;
    }
    if (!(g->height(xs.back()) <= 1e-3 * g->height(spec.b))) decreasing = false;
  }
  add("decreasing to zero at infinity", decreasing, "|u(x)| strictly decreasing and below 1e-3 |u(b)| at b+1e12");

  bool slope_decay = true;
  for (const TailGraph* g : {&spec.upper, &spec.lower}) {
    for (std::size_t k = 1; k < xs.size(); ++k) {
      if (std::abs(g->slope(xs[k])) > std::abs(g->slope(xs[k - 1]))) slope_decay = false;
    }
    if (!(std::abs(g->slope(xs.back())) <= 1e-3 * std::abs(g->slope(spec.b)) ||
          g->slope(xs.back()) == 0.0)) {
      slope_decay = false;
    }
  }
  add("derivative decreasing to zero", slope_decay, "|u'| non-increasing on [b, inf) and vanishing");

  {
    const double sb = spec.sigma_b();
    double worst = 0.0;
    for (int side : {1, -1}) {
      const TailGraph& g = side > 0 ? spec.upper : spec.lower;
      const Point2 p = spec.point(side * sb);
      Point2 v = spec.velocity(side * sb);
      const Point2 tail_dir{1.0, g.slope(spec.b)};
      worst = std::max(worst, distance(p, Point2{spec.b, g.value(spec.b)}));
      worst = std::max(worst, std::abs(cross(v / norm(v), tail_dir / norm(tail_dir))));
    }
    add("core joins tails C1", worst < 1e-8, "max value/direction mismatch " + std::to_string(worst));
  }

  try {
    const auto poly = build_gamma0(spec, spec.b + 3.0, 256);
    bool inside = true;
    for (const auto& p : poly.vertices()) inside = inside && p.x > spec.a && std::abs(p.y) < spec.c;
    // beyond b + 3 the tails are monotone graphs bounded by their values there
    inside = inside && spec.u_plus(spec.b) < spec.c && -spec.u_minus(spec.b) < spec.c;
    add("strip containment", inside, "curve inside (a, inf) x (-c, c)");
    add("embedded", is_embedded(poly), "sampled core and tails to x = b+3");
  } catch (const Error& e) {
    add("strip containment", false, e.what());
    add("embedded", false, e.what());
  }

  try {
    const bool power_diverges =
        (spec.upper.form == TailGraph::Form::power_decay && spec.upper.rate <= 1.0) ||
        (spec.lower.form == TailGraph::Form::power_decay && spec.lower.rate <= 1.0);
    if (power_diverges) throw InvalidInput("power tail with exponent <= 1");
    const double area = reference_area(spec);
    add("finite area", std::isfinite(area) && area > 0.0, "A0=" + std::to_string(area));
  } catch (const Error& e) {
    add("finite area", false, e.what());
  }
  return rep;
}

// ---------------------------------------------------------------------------
// sampling

namespace {

// Parameters at arclength k*h, k = 1, 2, ..., along one branch (direction
// +1 or -1 in sigma), stopping past x = x_stop.
std::vector<double> branch_parameters(const OpenCurveSpec& spec, int dir, double h, double x_stop) {
  using boost::math::quadrature::gauss;
  auto speed = [&](double s) { return norm(spec.velocity(s)); };
  std::vector<double> out;
  double s = 0.0;
  for (;;) {
    // Newton on the arclength from s; speed only vanishes at sigma = 0 for
    // the tanh core, where it is 1.
    double d = h / speed(s);
    for (int it = 0; it < 50; ++it) {
      const double len = gauss<double, 10>::integrate(speed, std::min(s, s + dir * d), std::max(s, s + dir * d));
      const double step = (len - h) / speed(s + dir * d);
      d -= step;
      if (std::abs(step) <= 1e-15 * d) break;
    }
    s += dir * d;
    if (spec.point(s).x > x_stop) break;
    out.push_back(s);
    if (out.size() > 50'000'000) throw InvalidInput("gamma0 sampling does not terminate");
  }
  return out;
}

}  // namespace

OpenPolyline build_gamma0(const OpenCurveSpec& spec, double truncation_x, std::size_t resolution) {
  if (resolution < 64) throw InvalidInput("resolution must be at least 64");
  if (!(truncation_x >= spec.b + 3.0)) throw InvalidInput("truncation_x must be at least b + 3");
  if (!(spec.c > 0.0)) throw InvalidInput("spec violates c > 0");
  if (!(spec.a + 1.0 < spec.b)) throw InvalidInput("spec violates a+1 < b");
  const double h = 1.0 / static_cast<double>(resolution);
  const auto up = branch_parameters(spec, +1, h, truncation_x);
  const auto down = branch_parameters(spec, -1, h, truncation_x);
  std::vector<Point2> pts;
  pts.reserve(up.size() + down.size() + 1);
  for (auto it = up.rbegin(); it != up.rend(); ++it) pts.push_back(spec.point(*it));
  pts.push_back(spec.point(0.0));
  for (double s : down) pts.push_back(spec.point(s));
  return OpenPolyline(std::move(pts));
}

double tail_cutoff(const OpenCurveSpec& spec, double height) {
  auto above = [&](double x) { return spec.upper.height(x) >= height || spec.lower.height(x) >= height; };
  double lo = spec.b, hi = spec.b + 1.0;
  while (above(hi)) {
    lo = hi;
    hi = spec.b + 2.0 * (hi - spec.b);
    if (hi > 1e15) throw InvalidInput("tails do not decay below the cutoff height");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (above(mid) ? lo : hi) = mid;
  }
  return hi;
}

// ---------------------------------------------------------------------------
// capping

ClosedCurve cap(const OpenPolyline& gamma0, int i, const OpenCurveSpec& spec, const CapParams& cp) {
  if (!(i >= spec.b + 3.0)) throw InvalidInput("cap index must satisfy i >= b + 3");
  if (!(cp.bulge > 0.0 && cp.bulge <= 1.0)) throw InvalidInput("cap bulge must lie in (0, 1]");
  const auto v = gamma0.vertices();
  const double xi = static_cast<double>(i);
  if (!(v.front().x > xi && v.back().x > xi)) {
    throw InvalidInput("gamma0 must be sampled beyond x = " + std::to_string(i));
  }
  std::size_t j0 = 0;
  while (v[j0].x > xi) ++j0;
  std::size_t j1 = v.size() - 1;
  while (v[j1].x > xi) --j1;
  for (std::size_t j = j0; j <= j1; ++j) {
    if (v[j].x > xi) throw InvalidInput("gamma0 re-enters x > i between the tails");
  }

  // tip: half-ellipse of radius equal to the half-width at x_e
  const double x_tip = xi + cp.bulge;
  double xe = x_tip;
  for (int it = 0; it < 4; ++it) xe = x_tip - 0.5 * (spec.u_plus(xe) - spec.u_minus(xe));
  const double H = 0.5 * (spec.u_plus(xe) - spec.u_minus(xe));
  if (!(H > 0.0) || !(xe > xi)) throw InvalidInput("tails too thin to cap at i = " + std::to_string(i));
  const double rho = H;
  const double ym = 0.5 * (spec.u_plus(xe) + spec.u_minus(xe));
  const double A = 0.5 * rho * (spec.upper.slope(xe) + spec.lower.slope(xe));
  const double B = 0.5 * rho * (spec.upper.slope(xe) - spec.lower.slope(xe));
  auto tip = [&](double phi) {
    const double s = std::sin(phi), c = std::cos(phi);
    return Point2{xe + rho * s, ym + H * c + A * s + B * s * c};
  };

  // j0 >= 1 and j1 + 1 < size since both ends lie beyond x = i
  const double h = std::max(distance(v[j0], v[j0 - 1]), distance(v[j1], v[j1 + 1]));
  const auto n_tip = static_cast<std::size_t>(
      std::max({16.0, std::ceil(kPi / cp.max_turn), std::ceil(kPi * rho / h)}));
  const double h_tip = kPi * rho / static_cast<double>(n_tip);

  // strand abscissae from the tip back towards x = i, graded
  const double x_last = std::max(v[j0].x, v[j1].x);
  std::vector<double> xs;
  double spacing = h_tip;
  double x = xe;
  for (;;) {
    spacing = std::min(h, spacing * cp.grading);
    x -= spacing;
    if (!(x > x_last + 0.5 * spacing) || !(x > xi)) break;
    xs.push_back(x);
  }

  std::vector<Point2> pts(v.begin() + static_cast<std::ptrdiff_t>(j0), v.begin() + static_cast<std::ptrdiff_t>(j1) + 1);
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) pts.push_back({*it, spec.u_minus(*it)});
  for (std::size_t k = n_tip + 1; k-- > 0;) {
    pts.push_back(tip(kPi * static_cast<double>(k) / static_cast<double>(n_tip)));
  }
  for (double xx : xs) pts.push_back({xx, spec.u_plus(xx)});

  ClosedCurve out(std::move(pts), ClosedCurve::Normalize::keep);
  if (out.orientation() != Orientation::ccw || !is_embedded(out)) {
    throw InvalidInput("cap at i = " + std::to_string(i) + " self-intersects; increase the resolution");
  }
  return out;
}

ApproximantFamily build_family(const OpenCurveSpec& spec, std::span<const int> indices, std::size_t resolution,
                               const CapParams& cap_params) {
  if (indices.empty()) throw InvalidInput("empty index list");
  for (std::size_t k = 1; k < indices.size(); ++k) {
    if (indices[k] <= indices[k - 1]) throw InvalidInput("indices must be strictly increasing");
  }
  const int top = indices.back();
  ApproximantFamily fam{spec, resolution, {indices.begin(), indices.end()}, {},
                        build_gamma0(spec, std::max(top + 1.0, spec.b + 3.0), resolution)};
  for (int i : indices) fam.curves.push_back(cap(fam.gamma0, i, spec, cap_params));
  return fam;
}

FlowParams slingshot_flow_params() {
  FlowParams p;
  p.scheme = Scheme::semi_implicit;
  p.remesh = RemeshMode::adaptive;
  p.cfl = 0.9;
  p.max_turn = 0.1;
  p.max_edge = 0.05;
  p.min_edge = 1e-8;
  p.max_dt = 1e-5;
  return p;
}

std::vector<double> default_t_grid() {
  std::vector<double> g{1e-4, 2e-4, 5e-4, 1e-3};
  for (int k = 1; k <= 20; ++k) g.push_back(0.0025 * k);
  return g;
}

std::vector<Trajectory> run_family(const ApproximantFamily& family, std::span<const double> t_grid,
                                   const FlowParams& params, unsigned threads) {
  if (t_grid.empty()) throw InvalidInput("empty t_grid");
  std::vector<std::optional<Trajectory>> out(family.curves.size());
  parallel_for(out.size(), worker_count(threads), [&](std::size_t k) {
    try {
      out[k] = run_until(family.curves[k], t_grid.back(), t_grid, params);
    } catch (const Error& e) {
      throw FlowError("i=" + std::to_string(family.indices[k]) + ": " + e.what());
    }
  });
  std::vector<Trajectory> res;
  res.reserve(out.size());
  for (auto& t : out) res.push_back(std::move(*t));
  return res;
}

// ---------------------------------------------------------------------------
// diagnostics

ConvergenceReport convergence_report(std::span<const Trajectory> trajs, std::span<const int> indices,
                                     const OpenPolyline& gamma0, std::span<const double> eps_list) {
  if (trajs.empty() || trajs.size() != indices.size()) throw InvalidInput("need one index per trajectory");
  ConvergenceReport rep;
  rep.indices.assign(indices.begin(), indices.end());
  const auto& ref = trajs.front().samples;
  for (const auto& tr : trajs) {
    if (tr.samples.size() != ref.size()) throw InvalidInput("trajectories are sampled on different grids");
    for (std::size_t j = 0; j < ref.size(); ++j) {
      if (tr.samples[j].t != ref[j].t) throw InvalidInput("trajectories are sampled on different grids");
    }
  }
  for (std::size_t j = 1; j < ref.size(); ++j) rep.times.push_back(ref[j].t);
  for (std::size_t k = 0; k + 1 < trajs.size(); ++k) {
    std::vector<double> row;
    for (std::size_t j = 1; j < ref.size(); ++j) {
      row.push_back(hausdorff_distance(trajs[k].samples[j].curve, trajs[k + 1].samples[j].curve));
    }
    rep.cauchy_max.push_back(row.empty() ? 0.0 : *std::max_element(row.begin(), row.end()));
    rep.cauchy.push_back(std::move(row));
  }
  const auto& last = trajs.back().samples;
  for (std::size_t j = 1; j < last.size(); ++j) {
    rep.distance_to_gamma0.push_back(directed_hausdorff(last[j].curve, gamma0));
  }
  for (double eps : eps_list) {
    ConvergenceReport::EpsilonTime et{eps, std::nullopt};
    for (std::size_t j = 0; j < rep.times.size(); ++j) {
      if (rep.distance_to_gamma0[j] >= eps) {
        et.t_eps = rep.times[j];
        break;
      }
    }
    rep.eps_times.push_back(et);
  }
  return rep;
}

double halfplane_area(const ClosedCurve& curve, double x0) {
  // Sutherland-Hodgman against one half-plane; the clipped ring may contain
  // zero-width bridges, which do not change the shoelace sum.
  const auto v = curve.vertices();
  const std::size_t n = v.size();
  std::vector<Point2> out;
  out.reserve(n + 8);
  for (std::size_t k = 0; k < n; ++k) {
    const Point2 p = v[k];
    const Point2 q = v[(k + 1) % n];
    const bool pin = p.x >= x0, qin = q.x >= x0;
    if (pin) out.push_back(p);
    if (pin != qin) {
      const double u = (x0 - p.x) / (q.x - p.x);
      out.push_back({x0, p.y + u * (q.y - p.y)});
    }
  }
  if (out.size() < 3) return 0.0;
  return std::abs(signed_area(out));
}

TailDecayReport tail_decay_rate(const Trajectory& traj, double x0, double c, double slack) {
  if (traj.samples.size() < 3) throw InvalidInput("tail decay needs at least 3 samples");
  TailDecayReport rep;
  rep.x0 = x0;
  rep.slack = slack;
  const double R = 16.0 * c / kPi;
  rep.threshold = kPi - 8.0 * c / R;
  for (const auto& s : traj.samples) {
    rep.times.push_back(s.t);
    rep.area.push_back(halfplane_area(s.curve, x0));
  }
  for (std::size_t k = 0; k + 1 < rep.times.size(); ++k) {
    if (!(rep.area[k] > 0.0 && rep.area[k + 1] > 0.0)) continue;
    const double slope = (rep.area[k + 1] - rep.area[k]) / (rep.times[k + 1] - rep.times[k]);
    rep.slope_times.push_back(rep.times[k]);
    rep.slopes.push_back(slope);
    if (!(slope <= -rep.threshold * (1.0 - slack))) rep.pass = false;
  }
  return rep;
}

std::vector<ConfinementRow> confinement_boxes(std::span<const Trajectory> trajs, std::span<const int> indices,
                                              const OpenCurveSpec& spec) {
  if (trajs.empty() || trajs.size() != indices.size()) throw InvalidInput("need one index per trajectory");
  const std::size_t m = trajs.front().samples.size();
  for (const auto& tr : trajs) {
    if (tr.samples.size() != m) throw InvalidInput("trajectories are sampled on different grids");
  }
  std::vector<ConfinementRow> rows;
  for (std::size_t j = 0; j < m; ++j) {
    ConfinementRow row;
    row.t = trajs.front().samples[j].t;
    row.from_index = indices.front();
    row.x_max = -INFINITY;
    for (const auto& tr : trajs) {
      const BBox box = tr.samples[j].curve.bbox();
      row.x_max = std::max(row.x_max, box.hi.x);
      row.y_abs_max = std::max({row.y_abs_max, box.hi.y, -box.lo.y});
      if (box.lo.x < spec.a || box.hi.y > spec.c || box.lo.y < -spec.c) row.in_strip = false;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace csf
