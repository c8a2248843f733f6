#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "csf/acceptance.hpp"
#include "csf/cli.hpp"
#include "csf/error.hpp"
#include "csf/flow.hpp"
#include "csf/geometry.hpp"
#include "csf/render.hpp"
#include "csf/slingshot.hpp"
#include "csf/verify.hpp"

namespace py = pybind11;
using namespace csf;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<Point2> to_points(const Array& a) {
  if (a.ndim() != 2 || a.shape(1) != 2) throw InvalidInput("expected an (n, 2) array of points");
  auto r = a.unchecked<2>();
  std::vector<Point2> pts(static_cast<std::size_t>(a.shape(0)));
  for (py::ssize_t i = 0; i < a.shape(0); ++i) pts[i] = {r(i, 0), r(i, 1)};
  return pts;
}

Array to_array(std::span<const Point2> pts) {
  Array a({static_cast<py::ssize_t>(pts.size()), py::ssize_t{2}});
  auto w = a.mutable_unchecked<2>();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    w(i, 0) = pts[i].x;
    w(i, 1) = pts[i].y;
  }
  return a;
}

ClosedCurve closed(const Array& a) { return ClosedCurve(to_points(a)); }

py::dict state_dict(const FlowState& s) {
  py::dict d;
  d["t"] = s.t;
  d["area"] = s.area;
  d["length"] = s.length;
  d["max_abs_kappa"] = s.max_abs_kappa;
  d["step_count"] = s.step_count;
  d["points"] = to_array(s.curve.vertices());
  return d;
}

py::dict trajectory_dict(const Trajectory& tr) {
  py::dict d;
  py::list samples;
  for (const auto& s : tr.samples) samples.append(state_dict(s));
  d["samples"] = samples;
  d["termination"] = to_string(tr.termination);
  d["extinction_time"] = tr.extinction_time;
  d["final_state"] = tr.final_state ? py::object(state_dict(*tr.final_state)) : py::none();
  d["retries"] = tr.retries;
  d["message"] = tr.message;
  return d;
}

// Trajectories cross the boundary as dicts; this rebuilds the C++ side.
Trajectory from_dict(const py::dict& d) {
  Trajectory tr;
  for (auto s : d["samples"].cast<py::list>()) {
    const auto sd = s.cast<py::dict>();
    tr.samples.push_back(FlowState::make(closed(sd["points"].cast<Array>()), sd["t"].cast<double>(),
                                         sd["step_count"].cast<std::size_t>()));
  }
  return tr;
}

}  // namespace

PYBIND11_MODULE(_csf, m) {
  m.doc() = "Curve shortening flow on polygonal curves";

  // registered base first: later translators are tried first
  const auto& error = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidInput>(m, "InvalidInput", error.ptr());
  py::register_exception<DegenerateConfiguration>(m, "DegenerateConfiguration", error.ptr());
  py::register_exception<FlowError>(m, "FlowError", error.ptr());

  py::enum_<Scheme>(m, "Scheme")
      .value("explicit_euler", Scheme::explicit_euler)
      .value("semi_implicit", Scheme::semi_implicit);
  py::enum_<RemeshMode>(m, "RemeshMode").value("uniform", RemeshMode::uniform).value("adaptive", RemeshMode::adaptive);

  py::class_<FlowParams>(m, "FlowParams")
      .def(py::init<>())
      .def_readwrite("cfl", &FlowParams::cfl)
      .def_readwrite("remesh_ratio", &FlowParams::remesh_ratio)
      .def_readwrite("target_vertices", &FlowParams::target_vertices)
      .def_readwrite("scheme", &FlowParams::scheme)
      .def_readwrite("extinction_area", &FlowParams::extinction_area)
      .def_readwrite("remesh", &FlowParams::remesh)
      .def_readwrite("max_edge", &FlowParams::max_edge)
      .def_readwrite("max_turn", &FlowParams::max_turn)
      .def_readwrite("min_edge", &FlowParams::min_edge)
      .def_readwrite("max_vertices", &FlowParams::max_vertices)
      .def_readwrite("max_dt", &FlowParams::max_dt)
      .def_readwrite("max_retries", &FlowParams::max_retries)
      .def("validate", &FlowParams::validate);

  // geometry
  m.def("enclosed_area", [](const Array& a) { return enclosed_area(closed(a)); });
  m.def("arc_length", [](const Array& a) { return arc_length(closed(a)); });
  m.def("is_embedded", [](const Array& a, bool is_closed) {
    const auto pts = to_points(a);
    return is_embedded(PolylineView{pts, is_closed});
  }, py::arg("points"), py::arg("closed") = true);
  m.def("curvature", [](const Array& a) { return curvature(closed(a)).kappa; });
  m.def("count_intersections", [](const Array& a, const Array& b) { return count_intersections(closed(a), closed(b)); });
  m.def("hausdorff_distance", [](const Array& a, bool ac, const Array& b, bool bc) {
    const auto pa = to_points(a), pb = to_points(b);
    return hausdorff_distance(PolylineView{pa, ac}, PolylineView{pb, bc});
  }, py::arg("a"), py::arg("a_closed"), py::arg("b"), py::arg("b_closed"));
  m.def("resample", [](const Array& a, std::size_t n) { return to_array(resample(closed(a), n).vertices()); });
  m.def("perturbed", [](const Array& a, double relative, std::uint64_t seed) {
    return to_array(perturbed(closed(a), relative, seed).vertices());
  });
  m.def("ccw", [](const Array& a) { return to_array(closed(a).vertices()); },
        "Vertices reordered counter-clockwise, as the flow sees them.");

  // flow
  m.def("step", [](const Array& a, const FlowParams& p) { return state_dict(step(FlowState::make(closed(a)), p)); });
  m.def("run_until", [](const Array& a, double t_end, const std::vector<double>& ts, const FlowParams& p) {
    Trajectory tr;
    {
      py::gil_scoped_release release;
      tr = run_until(closed(a), t_end, ts, p);
    }
    return trajectory_dict(tr);
  }, py::arg("points"), py::arg("t_end"), py::arg("sample_times"), py::arg("params") = FlowParams{});
  m.def("circle_radius", &circle_radius);
  m.def("grim_reaper_point", [](double y, double t) {
    const Point2 p = grim_reaper_point(y, t);
    return std::pair{p.x, p.y};
  });
  m.def("intersection_counts", [](const py::dict& a, const py::dict& b) {
    const auto rep = intersection_monotonicity(from_dict(a), from_dict(b));
    py::dict d;
    d["times"] = rep.times;
    d["counts"] = rep.counts;
    d["violations"] = rep.violations;
    d["skipped"] = rep.skipped;
    d["non_increasing"] = rep.non_increasing;
    return d;
  });

  // slingshot
  m.def("preset_reference_area", &preset_reference_area);
  m.def("reference_area", [](const std::string& name) { return reference_area(preset(name)); });
  m.def("hypotheses", [](const std::string& name) { return dump_json(to_json(validate_hypotheses(preset(name)))); });
  m.def("gamma0", [](const std::string& name, double truncation_x, std::size_t resolution) {
    return to_array(build_gamma0(preset(name), truncation_x, resolution).vertices());
  }, py::arg("preset"), py::arg("truncation_x"), py::arg("resolution") = 128);
  m.def("approximants", [](const std::string& name, const std::vector<int>& idx, std::size_t resolution) {
    const auto fam = build_family(preset(name), idx, resolution);
    std::vector<Array> out;
    for (const auto& c : fam.curves) out.push_back(to_array(c.vertices()));
    return out;
  }, py::arg("preset"), py::arg("indices"), py::arg("resolution") = 128);
  m.def("slingshot_flow_params", &slingshot_flow_params);
  m.def("default_t_grid", &default_t_grid);
  m.def("halfplane_area", [](const Array& a, double x0) { return halfplane_area(closed(a), x0); });

  // verify
  m.def("build_cover", [](const Array& a, double r_min, std::size_t grid) {
    return dump_json(to_json(build_cover(closed(a), r_min, grid)));
  }, py::arg("points"), py::arg("r_min"), py::arg("grid") = 32);
  m.def("is_basic_rectangle",
        [](const Array& a, double angle, std::pair<double, double> origin, double R, double D, double r,
           std::size_t grid) {
          const BasicRectangle rect({angle, {origin.first, origin.second}}, R, D, r);
          const auto chk = is_basic_rectangle(rect, closed(a), grid);
          return std::pair{chk.basic, chk.reason};
        },
        py::arg("points"), py::arg("angle"), py::arg("origin"), py::arg("R"), py::arg("D"), py::arg("r"),
        py::arg("grid") = 32);

  // acceptance, cli, render
  m.def("criterion_name", &criterion_name);
  m.def("run_criteria", [](const std::vector<int>& ids, std::uint64_t seed) {
    AcceptanceOptions opt;
    opt.seed = seed;
    std::vector<CriterionResult> rs;
    {
      py::gil_scoped_release release;
      rs = run_acceptance(ids, opt);
    }
    std::vector<std::string> lines;
    for (const auto& r : rs) lines.push_back(format_line(r));
    return std::pair{lines, dump_json(acceptance_report(rs, opt))};
  }, py::arg("ids"), py::arg("seed") = 1);
  m.def("run_cli", [](const std::string& mode, const std::string& config, const std::filesystem::path& base,
                      std::optional<std::filesystem::path> out, std::optional<std::uint64_t> seed) {
    std::ostringstream log, err;
    const int code = cli::run(cli::parse_mode(mode), Json::parse(config), base, {out, seed}, log, err);
    return std::tuple{code, log.str(), err.str()};
  }, py::arg("mode"), py::arg("config"), py::arg("base") = std::filesystem::path("."), py::arg("out") = py::none(),
        py::arg("seed") = py::none());
  m.def("render_svg", [](const std::vector<Array>& curves, const std::vector<bool>& closed_flags,
                         const std::vector<bool>& dashed) {
    if (closed_flags.size() != curves.size() || dashed.size() != curves.size()) {
      throw InvalidInput("render_svg: one closed and one dashed flag per curve");
    }
    std::vector<SvgLayer> layers;
    for (std::size_t k = 0; k < curves.size(); ++k) {
      layers.push_back({to_points(curves[k]), closed_flags[k], dashed[k], "curve_" + std::to_string(k)});
    }
    return render_svg(layers);
  });
}
