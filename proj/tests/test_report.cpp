#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "csf/curve_io.hpp"
#include "csf/error.hpp"
#include "csf/flow.hpp"
#include "csf/render.hpp"
#include "csf/report_io.hpp"
#include "shapes.hpp"

using namespace csf;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("snapshot names") {
  CHECK(snapshot_name(0.0125) == "snap_0.012500.txt");
  CHECK(snapshot_name(0.0) == "snap_0.000000.txt");
}

TEST_CASE("diagnostics csv") {
  FlowParams p;
  p.target_vertices = 64;
  const auto tr = run_until(test::circle(64, 1.0), 0.1, std::vector<double>{0.05, 0.1}, p);
  std::ostringstream os;
  write_diagnostics_csv(os, tr);
  const auto ls = lines(os.str());
  REQUIRE(ls.size() == 4);
  CHECK(ls[0] == "t,area,length,max_abs_kappa,isoperimetric_ratio,vertex_count");
  for (std::size_t k = 1; k < ls.size(); ++k) CHECK(count(ls[k], ",") == 5);
  CHECK(ls[1].rfind("0,", 0) == 0);
}

TEST_CASE("snapshots round trip") {
  FlowParams p;
  p.target_vertices = 32;
  const auto tr = run_until(test::circle(32, 1.0), 0.02, std::vector<double>{0.01, 0.02}, p);
  const auto dir = std::filesystem::temp_directory_path() / "csf_test_snapshots";
  std::filesystem::remove_all(dir);
  const auto names = write_snapshots(dir, tr);
  REQUIRE(names.size() == 3);
  CHECK(names[1] == "snap_0.010000.txt");
  const auto back = load_curve(dir / names[2]);
  CHECK(back.closed);
  REQUIRE(back.points.size() == tr.samples[2].curve.size());
  for (std::size_t k = 0; k < back.points.size(); ++k) CHECK(back.points[k] == tr.samples[2].curve[k]);
  std::filesystem::remove_all(dir);
}

TEST_CASE("verification csv") {
  std::ostringstream os;
  write_verification_csv(os, {{3, 0.5, "height", true, 0.25, 0.1}, {4, 0.0, "basic", false, 0.0, 1.0}});
  const auto ls = lines(os.str());
  REQUIRE(ls.size() == 3);
  CHECK(ls[0] == "rect_id,t,check_name,pass,value,bound");
  CHECK(ls[1].rfind("3,", 0) == 0);
  CHECK(ls[1].find(",height,1,") != std::string::npos);
  CHECK(ls[2].find(",basic,0,") != std::string::npos);
}

TEST_CASE("json output") {
  Json j;
  j["x"] = 1.5;
  j["bad"] = std::nan("");
  const std::string s = dump_json(j);
  CHECK(s.back() == '\n');
  const auto back = Json::parse(s);
  CHECK(back["x"] == 1.5);
  CHECK(back["bad"].is_null());
  const auto pj = to_json(FlowParams{});
  CHECK(pj["scheme"] == "explicit");
  CHECK(pj["cfl"] == 0.4);
  const auto file = std::filesystem::temp_directory_path() / "csf_test_plain_file";
  write_text(file, "z");
  CHECK_THROWS_AS(write_text(file / "y.txt", "z"), InvalidInput);
  std::filesystem::remove(file);
}

TEST_CASE("svg rendering") {
  const auto c = test::circle(16, 1.0);
  SvgLayer l{std::vector<Point2>(c.vertices().begin(), c.vertices().end()), true, false, "c"};
  const std::string a = render_svg({l});
  CHECK(count(a, "<path") == 1);
  CHECK(count(a, " Z\"") == 1);
  CHECK(a == render_svg({l}));
  SvgLayer ref = l;
  ref.dashed = true;
  ref.closed = false;
  const std::string b = render_svg({l, ref});
  CHECK(count(b, "<path") == 2);
  CHECK(count(b, "stroke-dasharray") == 1);
  CHECK_THROWS_AS(render_svg({}), InvalidInput);
  CHECK_THROWS_AS(render_svg({SvgLayer{{{0, 0}}, true, false, "one"}}), InvalidInput);
}
