#include "csf/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "csf/acceptance.hpp"
#include "csf/curve_io.hpp"
#include "csf/error.hpp"
#include "csf/flow.hpp"
#include "csf/geometry.hpp"
#include "csf/parallel.hpp"
#include "csf/render.hpp"
#include "csf/slingshot.hpp"
#include "csf/verify.hpp"

namespace fs = std::filesystem;

namespace csf::cli {
namespace {

constexpr double kPi = std::numbers::pi;

// Raised for anything wrong with the config or the files it names.
class ConfigError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Typed access to one JSON object; unknown keys are rejected by done().
class Fields {
 public:
  Fields(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(label("") + "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const Json& raw(const std::string& key) {
    used_.insert(key);
    return j_.at(key);
  }

  double number(const std::string& key, double def) {
    if (!has(key)) return def;
    const Json& v = raw(key);
    if (!v.is_number()) throw ConfigError(label(key) + "expected a number");
    return v.get<double>();
  }

  std::uint64_t count(const std::string& key, std::uint64_t def) {
    if (!has(key)) return def;
    const Json& v = raw(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      throw ConfigError(label(key) + "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  bool flag(const std::string& key, bool def) {
    if (!has(key)) return def;
    const Json& v = raw(key);
    if (!v.is_boolean()) throw ConfigError(label(key) + "expected true or false");
    return v.get<bool>();
  }

  std::string text(const std::string& key, const std::string& def) {
    if (!has(key)) return def;
    const Json& v = raw(key);
    if (!v.is_string()) throw ConfigError(label(key) + "expected a string");
    return v.get<std::string>();
  }

  Fields object(const std::string& key) { return Fields(raw(key), path(key)); }

  std::string path(const std::string& key) const { return where_.empty() ? key : where_ + "." + key; }
  std::string label(const std::string& key) const {
    const std::string p = key.empty() ? where_ : path(key);
    return p.empty() ? "config: " : "field '" + p + "': ";
  }

  void done() const {
    for (const auto& [k, v] : j_.items()) {
      if (!used_.count(k)) throw ConfigError(label(k) + "unknown field");
    }
  }

 private:
  const Json& j_;
  std::string where_;
  std::set<std::string> used_;
};

struct Common {
  fs::path out = "csf_out";
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

Common common(Fields& f, const fs::path& base, const Overrides& ov) {
  Common c;
  f.text("mode", "");
  if (f.has("out")) c.out = base / f.text("out", "");
  c.seed = f.count("seed", c.seed);
  c.threads = static_cast<unsigned>(f.count("threads", 0));
  if (ov.out) c.out = *ov.out;
  if (ov.seed) c.seed = *ov.seed;
  c.threads = worker_count(c.threads);
  return c;
}

Point2 point(Fields& f, const std::string& key, Point2 def) {
  if (!f.has(key)) return def;
  const Json& v = f.raw(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(f.label(key) + "expected [x, y]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

FlowParams flow_params(Fields f, FlowParams p) {
  const std::string scheme = f.text("scheme", p.scheme == Scheme::explicit_euler ? "explicit" : "semi_implicit");
  if (scheme == "explicit") {
    p.scheme = Scheme::explicit_euler;
  } else if (scheme == "semi_implicit") {
    p.scheme = Scheme::semi_implicit;
  } else {
    throw ConfigError(f.label("scheme") + "expected 'explicit' or 'semi_implicit'");
  }
  const std::string remesh = f.text("remesh", p.remesh == RemeshMode::uniform ? "uniform" : "adaptive");
  if (remesh == "uniform") {
    p.remesh = RemeshMode::uniform;
  } else if (remesh == "adaptive") {
    p.remesh = RemeshMode::adaptive;
  } else {
    throw ConfigError(f.label("remesh") + "expected 'uniform' or 'adaptive'");
  }
  p.cfl = f.number("cfl", p.cfl);
  p.remesh_ratio = f.number("remesh_ratio", p.remesh_ratio);
  p.target_vertices = f.count("target_vertices", p.target_vertices);
  p.extinction_area = f.number("extinction_area", p.extinction_area);
  p.max_edge = f.number("max_edge", p.max_edge);
  p.max_turn = f.number("max_turn", p.max_turn);
  p.min_edge = f.number("min_edge", p.min_edge);
  p.max_vertices = f.count("max_vertices", p.max_vertices);
  p.max_dt = f.number("max_dt", p.max_dt);
  p.max_retries = static_cast<int>(f.count("max_retries", static_cast<std::uint64_t>(p.max_retries)));
  f.done();
  try {
    p.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError(f.label("") + e.what());
  }
  return p;
}

// Either an explicit array or {"end": T, "count": n} for T k / n.
std::vector<double> time_grid(Fields& f, const std::string& key, double end_default, std::size_t count_default) {
  std::vector<double> ts;
  if (f.has(key) && f.raw(key).is_array()) {
    for (const auto& v : f.raw(key)) {
      if (!v.is_number()) throw ConfigError(f.label(key) + "expected numbers");
      ts.push_back(v.get<double>());
    }
  } else {
    double end = end_default;
    std::size_t n = count_default;
    if (f.has(key)) {
      Fields g = f.object(key);
      end = g.number("end", end);
      n = g.count("count", n);
      g.done();
    }
    if (!(end > 0.0) || n == 0) throw ConfigError(f.label(key) + "needs end > 0 and count > 0");
    for (std::size_t k = 1; k <= n; ++k) ts.push_back(end * static_cast<double>(k) / static_cast<double>(n));
  }
  if (ts.empty()) throw ConfigError(f.label(key) + "is empty");
  if (!(ts.front() > 0.0)) throw ConfigError(f.label(key) + "times must be positive");
  for (std::size_t k = 1; k < ts.size(); ++k) {
    if (!(ts[k] > ts[k - 1])) throw ConfigError(f.label(key) + "times must be strictly increasing");
  }
  return ts;
}

ClosedCurve ellipse(std::size_t n, double a, double b, Point2 c) {
  std::vector<Point2> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double th = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    v[k] = {c.x + a * std::cos(th), c.y + b * std::sin(th)};
  }
  return ClosedCurve(std::move(v));
}

// Named closed curves for simulate and verify.
std::optional<ClosedCurve> curve_preset(const std::string& name) {
  if (name == "unit-circle") return ellipse(512, 1.0, 1.0, {});
  if (name == "ellipse-2-1") return ellipse(512, 2.0, 1.0, {});
  return std::nullopt;
}

ClosedCurve load_input_curve(const fs::path& path) {
  const auto text = load_curve(path);
  if (!text.closed) throw ConfigError(path.string() + ": expected a closed curve");
  if (text.points.size() < ClosedCurve::kMinVertices) {
    throw ConfigError(path.string() + ": fewer than " + std::to_string(ClosedCurve::kMinVertices) + " vertices");
  }
  if (!is_embedded(PolylineView{text.points, true})) throw ConfigError("input not embedded: " + path.string());
  return ClosedCurve(text.points);
}

// "preset": name, or "curve": {"shape": ...} / {"file": ...}.
ClosedCurve closed_curve(Fields& f, const fs::path& base, std::uint64_t seed) {
  std::optional<ClosedCurve> c;
  if (f.has("preset")) {
    const std::string name = f.text("preset", "");
    c = curve_preset(name);
    if (!c) throw ConfigError(f.label("preset") + "unknown curve preset '" + name + "'");
  }
  if (f.has("curve")) {
    if (c) throw ConfigError("config: give either 'preset' or 'curve', not both");
    Fields g = f.object("curve");
    if (g.has("file")) {
      c = load_input_curve(base / g.text("file", ""));
    } else {
      const std::string shape = g.text("shape", "");
      const std::size_t n = g.count("vertices", 256);
      const Point2 ctr = point(g, "center", {0.0, 0.0});
      if (n < ClosedCurve::kMinVertices) {
        throw ConfigError(g.label("vertices") + "at least " + std::to_string(ClosedCurve::kMinVertices) + " vertices");
      }
      if (shape == "circle") {
        const double r = g.number("radius", 1.0);
        if (!(r > 0.0)) throw ConfigError(g.label("radius") + "must be positive");
        c = ellipse(n, r, r, ctr);
      } else if (shape == "ellipse") {
        const double a = g.number("a", 1.0), b = g.number("b", 1.0);
        if (!(a > 0.0 && b > 0.0)) throw ConfigError(g.label("") + "semi-axes must be positive");
        c = ellipse(n, a, b, ctr);
      } else {
        throw ConfigError(g.label("shape") + "expected 'circle' or 'ellipse', or give 'file'");
      }
    }
    g.done();
  }
  if (!c) throw ConfigError("config: missing 'preset' or 'curve'");
  const double amp = f.number("perturb", 0.0);
  if (amp < 0.0) throw ConfigError(f.label("perturb") + "must be non-negative");
  if (amp > 0.0) c = perturbed(*c, amp, seed);
  return *c;
}

void write_csv(const fs::path& path, const Trajectory& tr) {
  std::ostringstream os;
  write_diagnostics_csv(os, tr);
  write_text(path, os.str());
}

SvgLayer layer(PolylineView v, bool closed, bool dashed, std::string label) {
  return {std::vector<Point2>(v.points.begin(), v.points.end()), closed, dashed, std::move(label)};
}

// --- modes ------------------------------------------------------------------

int simulate(Fields& f, const fs::path& base, const Overrides& ov, std::ostream& log) {
  const Common cm = common(f, base, ov);
  const ClosedCurve c = closed_curve(f, base, cm.seed);
  FlowParams p;
  p.target_vertices = c.size();
  if (f.has("flow")) p = flow_params(f.object("flow"), p);
  const double lifespan = enclosed_area(c) / (2.0 * kPi);
  double t_end = f.number("t_end", 0.0);
  const auto ts = time_grid(f, "t_grid", t_end > 0.0 ? t_end : lifespan, 50);
  if (t_end == 0.0) t_end = f.has("t_grid") ? ts.back() : 1.25 * lifespan;
  if (ts.back() > t_end) throw ConfigError(f.label("t_grid") + "extends past t_end");
  const bool snaps = f.flag("snapshots", true);
  f.done();

  Trajectory tr;
  try {
    tr = run_until(c, t_end, ts, p);
  } catch (const FlowError& e) {
    log << "simulate: flow failed: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  fs::create_directories(cm.out);
  write_csv(cm.out / "diagnostics.csv", tr);
  Json names = Json::array();
  if (snaps) {
    for (const auto& n : write_snapshots(cm.out / "snapshots", tr)) names.push_back("snapshots/" + n);
  }
  Json doc = {{"mode", "simulate"},
              {"seed", cm.seed},
              {"vertices", c.size()},
              {"initial_area", enclosed_area(c)},
              {"params", to_json(p)},
              {"t_end", t_end},
              {"trajectory", trajectory_summary(tr)},
              {"snapshots", names}};
  write_json(cm.out / "summary.json", doc);
  const double t_last = tr.final_state ? tr.final_state->t : tr.samples.back().t;
  log << "simulate: " << to_string(tr.termination) << " at t=" << format_real(t_last);
  if (tr.termination == Termination::extinct) log << ", extinction time " << format_real(tr.extinction_time);
  log << ", " << tr.samples.size() << " samples -> " << cm.out.string() << "\n";
  return tr.termination == Termination::error ? kExitCheckFailure : kExitPass;
}

int slingshot(Fields& f, const fs::path& base, const Overrides& ov, std::ostream& log) {
  const Common cm = common(f, base, ov);
  const OpenCurveSpec spec = preset(f.text("preset", "tanh-hairpin"));
  std::vector<int> idx;
  if (f.has("indices") && f.raw("indices").is_array()) {
    for (const auto& v : f.raw("indices")) {
      if (!v.is_number_integer()) throw ConfigError(f.label("indices") + "expected integers");
      idx.push_back(v.get<int>());
    }
  } else {
    int lo = 4, hi = 9;
    if (f.has("indices")) {
      Fields g = f.object("indices");
      lo = static_cast<int>(g.count("from", 4));
      hi = static_cast<int>(g.count("to", 9));
      g.done();
    }
    for (int i = lo; i <= hi; ++i) idx.push_back(i);
  }
  if (idx.empty()) throw ConfigError(f.label("indices") + "is empty");
  for (std::size_t k = 1; k < idx.size(); ++k) {
    if (idx[k] <= idx[k - 1]) throw ConfigError(f.label("indices") + "must be strictly increasing");
  }
  const std::size_t res = f.count("resolution", 128);
  std::vector<double> tg = default_t_grid();
  if (f.has("t_grid")) tg = time_grid(f, "t_grid", 0.05, 20);
  FlowParams p = slingshot_flow_params();
  if (f.has("flow")) p = flow_params(f.object("flow"), p);
  std::vector<double> eps{0.05};
  if (f.has("eps")) {
    eps.clear();
    for (const auto& v : f.raw("eps")) {
      if (!v.is_number() || !(v.get<double>() > 0.0)) throw ConfigError(f.label("eps") + "expected positive numbers");
      eps.push_back(v.get<double>());
    }
  }
  const double x0 = f.number("tail_x0", 3.0);
  const bool snaps = f.flag("snapshots", true);
  f.done();

  const auto hyp = validate_hypotheses(spec);
  fs::create_directories(cm.out);
  write_json(cm.out / "hypotheses.json", to_json(hyp));
  if (!hyp.all_pass()) {
    for (const auto& c : hyp.clauses) {
      if (!c.pass) log << "slingshot: hypothesis '" << c.name << "' fails: " << c.detail << "\n";
    }
    throw ConfigError("initial curve violates the hypotheses");
  }

  const auto fam = build_family(spec, idx, res);
  std::vector<Trajectory> trs;
  try {
    trs = run_family(fam, tg, p, cm.threads);
  } catch (const FlowError& e) {
    log << "slingshot: flow failed: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  save_curve(cm.out / "gamma0.txt", fam.gamma0);
  Json members = Json::array();
  double area_worst = 0.0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const fs::path dir = cm.out / ("i_" + std::to_string(idx[k]));
    fs::create_directories(dir);
    write_csv(dir / "diagnostics.csv", trs[k]);
    if (snaps) write_snapshots(dir, trs[k]);
    const double a0 = trs[k].samples.front().area;
    double w = 0.0;
    for (const auto& s : trs[k].samples) w = std::max(w, std::abs(s.area - (a0 - 2 * kPi * s.t)) / a0);
    area_worst = std::max(area_worst, w);
    members.push_back({{"i", idx[k]}, {"max_relative_area_error", w}, {"trajectory", trajectory_summary(trs[k])}});
  }
  bool complete = true;
  for (const auto& tr : trs) complete = complete && tr.samples.size() == tg.size() + 1;

  bool decreasing = true;
  Json conv = nullptr;
  if (complete && idx.size() >= 2) {
    const auto rep = convergence_report(trs, idx, fam.gamma0, eps);
    for (std::size_t k = 1; k < rep.cauchy_max.size(); ++k) {
      decreasing = decreasing && rep.cauchy_max[k] < rep.cauchy_max[k - 1];
    }
    conv = to_json(rep);
    write_json(cm.out / "convergence.json", conv);
    write_json(cm.out / "confinement.json", to_json(confinement_boxes(trs, idx, spec)));
  }
  const auto tail = tail_decay_rate(trs.back(), x0, spec.c);
  write_json(cm.out / "tail_decay.json", to_json(tail));

  // overlay of the members at the first and last sample, gamma0 dashed
  for (const auto& [name, pick] : {std::pair{"overlay_t0.svg", 0}, std::pair{"overlay_final.svg", 1}}) {
    std::vector<SvgLayer> layers;
    for (std::size_t k = 0; k < trs.size(); ++k) {
      const auto& s = pick ? trs[k].samples.back() : trs[k].samples.front();
      layers.push_back(layer(s.curve, true, false, "i_" + std::to_string(idx[k])));
    }
    layers.push_back(layer(fam.gamma0, false, true, "gamma0"));
    write_text(cm.out / name, render_svg(layers));
  }

  const bool area_ok = area_worst <= 0.005;
  Json doc = {{"mode", "slingshot"},
              {"seed", cm.seed},
              {"spec", to_json(spec)},
              {"indices", idx},
              {"resolution", res},
              {"t_grid", tg},
              {"params", to_json(p)},
              {"members", members},
              {"checks",
               {{"complete", complete},
                {"cauchy_strictly_decreasing", decreasing},
                {"area_law", area_ok},
                {"tail_decay", tail.pass}}}};
  write_json(cm.out / "slingshot.json", doc);
  log << "slingshot: " << idx.size() << " members, " << (complete ? "complete" : "INCOMPLETE")
      << ", cauchy " << (decreasing ? "decreasing" : "NOT decreasing") << ", area law max "
      << format_real(area_worst) << ", tail decay " << (tail.pass ? "ok" : "FAILED") << " -> " << cm.out.string()
      << "\n";
  return complete && decreasing && area_ok && tail.pass ? kExitPass : kExitCheckFailure;
}

int verify_criteria(Fields& f, const Common& cm, std::ostream& log) {
  std::vector<int> ids;
  const Json& v = f.raw("criteria");
  if (v.is_number_integer()) {
    ids.push_back(v.get<int>());
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (!x.is_number_integer()) throw ConfigError(f.label("criteria") + "expected integers");
      ids.push_back(x.get<int>());
    }
  } else {
    throw ConfigError(f.label("criteria") + "expected an integer or a list of integers");
  }
  for (int id : ids) {
    if (id < 1 || id > kCriterionCount) throw ConfigError(f.label("criteria") + "no criterion " + std::to_string(id));
  }
  AcceptanceOptions opt;
  opt.seed = cm.seed;
  opt.threads = cm.threads;
  opt.basic_grid = f.count("basic_grid", opt.basic_grid);
  f.done();

  AcceptanceSuite suite(opt);
  std::vector<CriterionResult> results;
  for (int id : ids) {
    results.push_back(suite.run(id));
    log << format_line(results.back()) << "\n";
    log.flush();
  }
  fs::create_directories(cm.out);
  write_json(cm.out / "acceptance.json", acceptance_report(results, opt));
  for (const auto& r : results) {
    if (r.rows.empty()) continue;
    std::ostringstream os;
    write_verification_csv(os, r.rows);
    write_text(cm.out / ("verification_c" + std::to_string(r.id) + ".csv"), os.str());
  }
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; }) ? kExitPass
                                                                                          : kExitCheckFailure;
}

// Cover of a closed curve, then basic-ness and the graph bounds of every
// rectangle along the flow up to tbar.
int verify_curve(Fields& f, const fs::path& base, const Common& cm, std::ostream& log) {
  const ClosedCurve c = closed_curve(f, base, cm.seed);
  const double r_min = f.number("r_min", 0.05);
  const std::size_t grid = f.count("basic_grid", 64);
  const std::size_t samples = f.count("samples", 10);
  FlowParams p;
  p.target_vertices = c.size();
  if (f.has("flow")) p = flow_params(f.object("flow"), p);
  f.done();
  if (!(r_min > 0.0)) throw ConfigError("field 'r_min': must be positive");
  if (samples == 0) throw ConfigError("field 'samples': must be positive");

  CoverReport cover;
  try {
    cover = build_cover(c, r_min, grid);
  } catch (const DegenerateConfiguration& e) {
    log << "verify: no cover: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  std::vector<double> ts;
  for (std::size_t k = 1; k <= samples; ++k) ts.push_back(cover.tbar * static_cast<double>(k) / samples);
  Trajectory tr;
  try {
    tr = run_until(c, cover.tbar, ts, p);
  } catch (const FlowError& e) {
    log << "verify: flow failed: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  std::vector<VerificationRow> rows;
  Json reasons = Json::array();
  std::size_t failures = 0;
  for (const auto& s : tr.samples) {
    for (std::size_t k = 0; k < cover.rectangles.size(); ++k) {
      const auto& rect = cover.rectangles[k];
      const auto b = is_basic_rectangle(rect, s.curve, grid);
      rows.push_back({k, s.t, "basic", b.basic, b.basic ? 1.0 : 0.0, 1.0});
      if (!b.basic) {
        ++failures;
        reasons.push_back({{"rect_id", k}, {"t", s.t}, {"reason", b.reason}});
      }
      if (2.0 * s.t > rect.r() * rect.r()) continue;
      try {
        const auto slices = extract_graph(s.curve, rect);
        for (const auto& g : slices) {
          const auto gb = check_gradient_bound(g, rect);
          const auto hb = check_height_bound(g, rect, s.t);
          rows.push_back({k, s.t, "gradient", gb.pass, gb.value, gb.bound});
          rows.push_back({k, s.t, "height", hb.pass, hb.value, hb.bound});
          failures += (gb.pass ? 0 : 1) + (hb.pass ? 0 : 1);
        }
      } catch (const Error&) {
        rows.push_back({k, s.t, "extract_graph", false, 0.0, 1.0});
        ++failures;
      }
    }
  }
  const bool covered = cover.coverage_fraction == 1.0;
  fs::create_directories(cm.out);
  std::ostringstream os;
  write_verification_csv(os, rows);
  write_text(cm.out / "verification.csv", os.str());
  write_json(cm.out / "verify.json", {{"mode", "verify"},
                                      {"seed", cm.seed},
                                      {"cover", to_json(cover)},
                                      {"params", to_json(p)},
                                      {"trajectory", trajectory_summary(tr)},
                                      {"checks", rows.size()},
                                      {"failures", failures},
                                      {"basic_failures", reasons}});
  log << "verify: " << cover.rectangles.size() << " rectangles, coverage " << format_real(cover.coverage_fraction)
      << ", tbar " << format_real(cover.tbar) << ", " << failures << " failures in " << rows.size() << " checks -> "
      << cm.out.string() << "\n";
  return covered && failures == 0 ? kExitPass : kExitCheckFailure;
}

int verify(Fields& f, const fs::path& base, const Overrides& ov, std::ostream& log) {
  const Common cm = common(f, base, ov);
  if (f.has("criteria")) {
    if (f.has("curve") || f.has("preset")) throw ConfigError("config: give either 'criteria' or a curve");
    return verify_criteria(f, cm, log);
  }
  return verify_curve(f, base, cm, log);
}

SvgStyle style(Fields f) {
  SvgStyle s;
  s.width = f.number("width", s.width);
  s.margin = f.number("margin", s.margin);
  s.stroke_width = f.number("stroke_width", s.stroke_width);
  s.background = f.text("background", s.background);
  s.reference_color = f.text("reference_color", s.reference_color);
  s.dash = f.text("dash", s.dash);
  if (f.has("palette")) {
    s.palette.clear();
    for (const auto& v : f.raw("palette")) {
      if (!v.is_string()) throw ConfigError(f.label("palette") + "expected strings");
      s.palette.push_back(v.get<std::string>());
    }
  }
  f.done();
  if (!(s.width > 2.0 * s.margin) || s.margin < 0.0 || !(s.stroke_width > 0.0)) {
    throw ConfigError("field 'style': need width > 2 margin >= 0 and stroke_width > 0");
  }
  return s;
}

int render(Fields& f, const fs::path& base, const Overrides& ov, std::ostream& log) {
  const Common cm = common(f, base, ov);
  std::vector<fs::path> files;
  if (f.has("snapshots")) {
    const Json& v = f.raw("snapshots");
    if (!v.is_array()) throw ConfigError(f.label("snapshots") + "expected a list of file names");
    for (const auto& x : v) {
      if (!x.is_string()) throw ConfigError(f.label("snapshots") + "expected file names");
      files.push_back(base / x.get<std::string>());
    }
  }
  if (f.has("snapshot_dir")) {
    const fs::path dir = base / f.text("snapshot_dir", "");
    if (!fs::is_directory(dir)) throw ConfigError(f.label("snapshot_dir") + "not a directory: " + dir.string());
    std::vector<fs::path> found;
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.is_regular_file() && e.path().extension() == ".txt") found.push_back(e.path());
    }
    std::sort(found.begin(), found.end());
    files.insert(files.end(), found.begin(), found.end());
  }
  std::optional<fs::path> ref;
  if (f.has("reference")) ref = base / f.text("reference", "");
  const bool composite = f.flag("composite", true);
  const SvgStyle st = f.has("style") ? style(f.object("style")) : SvgStyle{};
  f.done();
  if (files.empty()) throw ConfigError("render: empty snapshot list");

  std::vector<SvgLayer> layers;
  for (const auto& p : files) {
    const auto text = load_curve(p);
    if (text.points.size() < 2) throw ConfigError(p.string() + ": fewer than 2 points");
    layers.push_back({text.points, text.closed, false, p.stem().string()});
  }
  std::optional<SvgLayer> ref_layer;
  if (ref) {
    const auto text = load_curve(*ref);
    ref_layer = SvgLayer{text.points, text.closed, true, ref->stem().string()};
  }
  fs::create_directories(cm.out);
  std::size_t written = 0;
  for (const auto& l : layers) {
    write_text(cm.out / (l.label + ".svg"), render_svg({l}, st));
    ++written;
  }
  if (composite) {
    auto all = layers;
    if (ref_layer) all.push_back(*ref_layer);
    write_text(cm.out / "composite.svg", render_svg(all, st));
    ++written;
  }
  log << "render: " << written << " svg files -> " << cm.out.string() << "\n";
  return kExitPass;
}

}  // namespace

const char* to_string(Mode m) noexcept {
  switch (m) {
    case Mode::simulate: return "simulate";
    case Mode::slingshot: return "slingshot";
    case Mode::verify: return "verify";
    case Mode::render: return "render";
  }
  return "?";
}

Mode parse_mode(const std::string& name) {
  for (Mode m : {Mode::simulate, Mode::slingshot, Mode::verify, Mode::render}) {
    if (name == to_string(m)) return m;
  }
  throw InvalidInput("unknown mode '" + name + "'");
}

int run(Mode mode, const Json& config, const fs::path& base_dir, const Overrides& overrides, std::ostream& log,
        std::ostream& err) {
  try {
    Fields f(config, "");
    if (f.has("mode")) {
      const Json& m = config.at("mode");
      if (!m.is_string() || m.get<std::string>() != to_string(mode)) {
        throw ConfigError("field 'mode': config is for '" + (m.is_string() ? m.get<std::string>() : "?") +
                          "', invoked as '" + to_string(mode) + "'");
      }
    }
    switch (mode) {
      case Mode::simulate: return simulate(f, base_dir, overrides, log);
      case Mode::slingshot: return slingshot(f, base_dir, overrides, log);
      case Mode::verify: return verify(f, base_dir, overrides, log);
      case Mode::render: return render(f, base_dir, overrides, log);
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Json::exception& e) {
    err << "error: config: " << e.what() << "\n";
    return kExitInputError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitInputError;
}

int run_file(Mode mode, const fs::path& path, const Overrides& overrides, std::ostream& log, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot read config " << path.string() << "\n";
    return kExitInputError;
  }
  Json config;
  try {
    config = Json::parse(in);
  } catch (const Json::parse_error& e) {
    err << "error: " << path.string() << ": " << e.what() << "\n";
    return kExitInputError;
  }
  return run(mode, config, path.parent_path(), overrides, log, err);
}

int main(int argc, char** argv) {
  CLI::App app{"Curve shortening flow lab"};
  app.require_subcommand(1);
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  for (Mode m : {Mode::simulate, Mode::slingshot, Mode::verify, Mode::render}) {
    auto* sub = app.add_subcommand(to_string(m));
    sub->add_option("--config", config, "JSON config file")->required();
    sub->add_option("--out", out, "output directory (overrides 'out')");
    sub->add_option("--seed", seed, "perturbation seed (overrides 'seed')");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }
  const auto* sub = app.get_subcommands().front();
  Overrides ov;
  if (sub->count("--out")) ov.out = out;
  if (sub->count("--seed")) ov.seed = seed;
  return run_file(parse_mode(sub->get_name()), config, ov, std::cout, std::cerr);
}

}  // namespace csf::cli
