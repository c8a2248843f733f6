#include "csf/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "csf/curve_io.hpp"
#include "csf/error.hpp"

namespace csf {
namespace {

Json real(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v == 0.0 ? 0.0 : v;
}

Json reals(const std::vector<double>& vs) {
  Json a = Json::array();
  for (double v : vs) a.push_back(real(v));
  return a;
}

}  // namespace

std::string snapshot_name(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snap_%.6f.txt", t);
  return buf;
}

void write_diagnostics_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,area,length,max_abs_kappa,isoperimetric_ratio,vertex_count\n";
  auto row = [&](const FlowState& s) {
    const double iso = s.area > 0.0 ? isoperimetric_ratio(s) : std::nan("");
    os << format_real(s.t) << ',' << format_real(s.area) << ',' << format_real(s.length) << ','
       << format_real(s.max_abs_kappa) << ',' << format_real(iso) << ',' << s.curve.size() << '\n';
  };
  for (const auto& s : traj.samples) row(s);
  if (traj.final_state && (traj.samples.empty() || traj.final_state->t > traj.samples.back().t)) {
    row(*traj.final_state);
  }
}

std::vector<std::string> write_snapshots(const std::filesystem::path& dir, const Trajectory& traj) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> names;
  for (const auto& s : traj.samples) {
    names.push_back(snapshot_name(s.t));
    save_curve(dir / names.back(), s.curve);
  }
  return names;
}

void write_verification_csv(std::ostream& os, const std::vector<VerificationRow>& rows) {
  os << "rect_id,t,check_name,pass,value,bound\n";
  for (const auto& r : rows) {
    os << r.rect_id << ',' << format_real(r.t) << ',' << r.check_name << ',' << (r.pass ? 1 : 0) << ','
       << format_real(r.value) << ',' << format_real(r.bound) << '\n';
  }
}

Json to_json(const FlowParams& p) {
  Json j;
  j["scheme"] = p.scheme == Scheme::explicit_euler ? "explicit" : "semi_implicit";
  j["remesh"] = p.remesh == RemeshMode::uniform ? "uniform" : "adaptive";
  j["cfl"] = p.cfl;
  j["remesh_ratio"] = p.remesh_ratio;
  j["target_vertices"] = p.target_vertices;
  j["extinction_area"] = p.extinction_area;
  j["max_edge"] = p.max_edge;
  j["max_turn"] = p.max_turn;
  j["min_edge"] = p.min_edge;
  j["max_vertices"] = p.max_vertices;
  j["max_dt"] = real(p.max_dt);
  j["max_retries"] = p.max_retries;
  return j;
}

Json to_json(const OpenCurveSpec& spec) {
  auto tail = [](const TailGraph& g) {
    return Json{{"form", to_string(g.form)}, {"rate", g.rate}, {"amplitude", g.amplitude}, {"sign", g.sign}};
  };
  Json j;
  j["preset_id"] = spec.preset_id;
  j["a"] = spec.a;
  j["b"] = spec.b;
  j["c"] = spec.c;
  j["core"] = spec.core == OpenCurveSpec::Core::tanh_hairpin ? "tanh_hairpin" : "hermite";
  j["upper"] = tail(spec.upper);
  j["lower"] = tail(spec.lower);
  return j;
}

Json to_json(const HypothesisReport& rep) {
  Json a = Json::array();
  for (const auto& c : rep.clauses) a.push_back({{"clause", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"all_pass", rep.all_pass()}, {"clauses", a}};
}

Json to_json(const ConvergenceReport& rep) {
  Json j;
  j["indices"] = rep.indices;
  j["times"] = reals(rep.times);
  Json rows = Json::array();
  for (std::size_t k = 0; k < rep.cauchy.size(); ++k) {
    rows.push_back({{"i", rep.indices[k]},
                    {"i_next", rep.indices[k + 1]},
                    {"max", real(rep.cauchy_max[k])},
                    {"distance", reals(rep.cauchy[k])}});
  }
  j["cauchy"] = rows;
  j["distance_to_gamma0"] = reals(rep.distance_to_gamma0);
  Json eps = Json::array();
  for (const auto& e : rep.eps_times) {
    eps.push_back({{"eps", e.eps}, {"t_eps", e.t_eps ? real(*e.t_eps) : Json(nullptr)}});
  }
  j["eps_times"] = eps;
  return j;
}

Json to_json(const std::vector<ConfinementRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) {
    a.push_back({{"t", real(r.t)},
                 {"from_index", r.from_index},
                 {"x_max", real(r.x_max)},
                 {"y_abs_max", real(r.y_abs_max)},
                 {"in_strip", r.in_strip}});
  }
  return a;
}

Json to_json(const TailDecayReport& rep) {
  return {{"x0", rep.x0},          {"threshold", rep.threshold}, {"slack", rep.slack},
          {"times", reals(rep.times)}, {"area", reals(rep.area)},    {"slope_times", reals(rep.slope_times)},
          {"slopes", reals(rep.slopes)}, {"pass", rep.pass}};
}

Json to_json(const BasicRectangle& rect) {
  return {{"angle", real(rect.frame().angle)},
          {"translation", {real(rect.frame().origin.x), real(rect.frame().origin.y)}},
          {"R", rect.R()},
          {"D", rect.D()},
          {"r", rect.r()}};
}

Json to_json(const CoverReport& rep) {
  Json rects = Json::array();
  for (std::size_t k = 0; k < rep.rectangles.size(); ++k) {
    Json r = to_json(rep.rectangles[k]);
    r["id"] = k;
    r["kind"] = to_string(rep.kinds[k]);
    r["arc_position"] = real(rep.arc_positions[k]);
    rects.push_back(std::move(r));
  }
  return {{"coverage_fraction", real(rep.coverage_fraction)}, {"tbar", real(rep.tbar)}, {"rectangles", rects}};
}

Json trajectory_summary(const Trajectory& traj) {
  Json j;
  j["termination"] = to_string(traj.termination);
  j["extinction_time"] = real(traj.extinction_time);
  j["retries"] = traj.retries;
  Json t = Json::array(), a = Json::array(), n = Json::array();
  for (const auto& s : traj.samples) {
    t.push_back(real(s.t));
    a.push_back(real(s.area));
    n.push_back(s.curve.size());
  }
  j["times"] = t;
  j["area"] = a;
  j["vertex_count"] = n;
  if (!traj.message.empty()) j["message"] = traj.message;
  return j;
}

std::string dump_json(const Json& doc) {
  return doc.dump(2, ' ', false, nlohmann::detail::error_handler_t::replace) + "\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw InvalidInput("cannot create " + path.parent_path().string() + ": " + ec.message());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidInput("cannot write " + path.string());
  os << text;
  if (!os) throw InvalidInput("write failed: " + path.string());
}

void write_json(const std::filesystem::path& path, const Json& doc) { write_text(path, dump_json(doc)); }

}  // namespace csf
