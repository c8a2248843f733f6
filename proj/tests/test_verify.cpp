#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "csf/error.hpp"
#include "csf/flow.hpp"
#include "csf/geometry.hpp"
#include "csf/slingshot.hpp"
#include "csf/verify.hpp"
#include "shapes.hpp"

using namespace csf;
using csf::test::circle;

namespace {

constexpr double kPi = std::numbers::pi;

// Top side is the graph y = top(x) on [-L, L], the rest a box reaching
// down to y = -depth.
template <class F>
ClosedCurve graph_box(F top, double L, double depth, double h) {
  std::vector<Point2> v;
  const int n = static_cast<int>(std::ceil(2 * L / h));
  for (int k = 0; k <= n; ++k) {
    const double x = L - 2 * L * k / n;
    v.push_back({x, top(x)});
  }
  const int m = static_cast<int>(std::ceil(depth / h));
  for (int k = 1; k <= m; ++k) v.push_back({-L, top(-L) + (-depth - top(-L)) * k / m});
  for (int k = 1; k < n; ++k) v.push_back({-L + 2 * L * k / n, -depth});
  for (int k = 0; k < m; ++k) v.push_back({L, -depth + (top(L) + depth) * k / m});
  return ClosedCurve(std::move(v));
}

ClosedCurve flat(double y = 0.5) {
  return graph_box([y](double) { return y; }, 20.0, 5.0, 0.02);
}

BasicRectangle unit_rect(double r = 0.2) { return BasicRectangle({0.0, {0, 0}}, 1.0, 1.0, r); }

}  // namespace

TEST_CASE("rigid frame round trip") {
  const RigidFrame f{0.7, {1.5, -2.0}};
  const Point2 p{0.3, 0.9};
  const Point2 q = f.to_local(f.to_world(p));
  CHECK(q.x == doctest::Approx(p.x));
  CHECK(q.y == doctest::Approx(p.y));
  const RigidFrame quarter{kPi / 2, {0, 0}};
  CHECK(quarter.to_world({1, 0}).y == doctest::Approx(1.0));
}

TEST_CASE("rectangle invariants") {
  CHECK_NOTHROW(unit_rect(0.2));
  CHECK_THROWS_AS(unit_rect(0.6), InvalidInput);
  CHECK_THROWS_AS(BasicRectangle({}, 0.0, 1.0, 0.1), InvalidInput);
  CHECK_THROWS_AS(BasicRectangle({}, 1.0, -1.0, 0.1), InvalidInput);
  CHECK_THROWS_AS(BasicRectangle({}, 1.0, 1.0, 0.0), InvalidInput);
  const auto rect = unit_rect();
  CHECK(rect.contains({0.5, 0.5}));
  CHECK(rect.contains({1.0, 1.0}));
  CHECK_FALSE(rect.contains({1.01, 0.5}));
  const auto c = rect.corners();
  CHECK(c[0] == Point2{-1, 0});
  CHECK(c[2] == Point2{1, 1});
}

TEST_CASE("star narrows the half-width") {
  const auto rect = unit_rect();
  CHECK(star(rect).R() == 0.25);
  CHECK(star(star(rect)).R() == doctest::Approx(1.0 / 16));
  CHECK(star(rect).D() == rect.D());
  CHECK(star(rect).r() == rect.r());
}

TEST_CASE("basic rectangle over a flat graph") {
  const auto curve = flat();
  CHECK(is_basic_rectangle(unit_rect(), curve));
  CHECK(is_basic_rectangle(unit_rect(), curve, 64));
  CHECK_THROWS_AS(is_basic_rectangle(unit_rect(), curve, 16), InvalidInput);
  // balls too large
  const BasicRectangle fat({0.0, {0, 0}}, 1.0, 1.0, 0.49);
  CHECK(is_basic_rectangle(fat, curve));
  const BasicRectangle low({0.0, {0, 0.2}}, 1.0, 1.0, 0.4);
  const auto chk = is_basic_rectangle(low, curve);
  CHECK_FALSE(chk);
  CHECK_FALSE(chk.reason.empty());
  // the curve misses the rectangle entirely
  CHECK_FALSE(is_basic_rectangle(BasicRectangle({0.0, {0, 1}}, 1.0, 1.0, 0.2), curve));
}

TEST_CASE("rectangle across the hairpin turn is not basic") {
  const auto spec = preset("tanh-hairpin");
  const auto fam = build_family(spec, std::vector<int>{4}, 128);
  // vertical segments near the turn cut both branches
  const BasicRectangle rect({0.0, {0.3, -0.5}}, 0.2, 1.0, 0.1);
  const auto chk = is_basic_rectangle(rect, fam.curves[0]);
  CHECK_FALSE(chk);
  CHECK(chk.reason.find("2 times") != std::string::npos);
}

TEST_CASE("star of a basic rectangle stays basic") {
  const auto curve = graph_box([](double x) { return 0.5 + 0.1 * std::sin(2 * x); }, 6.0, 3.0, 0.02);
  for (double x0 : {-1.0, 0.0, 0.7, 2.0}) {
    const BasicRectangle rect({0.0, {x0, 0}}, 1.0, 1.0, 0.2);
    REQUIRE(is_basic_rectangle(rect, curve));
    CHECK(is_basic_rectangle(star(rect), curve));
    CHECK(is_basic_rectangle(star(star(rect)), curve));
  }
}

TEST_CASE("basic check is invariant under rigid motions") {
  const auto curve = graph_box([](double x) { return 0.5 + 0.1 * std::sin(2 * x); }, 6.0, 3.0, 0.02);
  const BasicRectangle good({0.0, {0.3, 0}}, 1.0, 1.0, 0.2);
  const BasicRectangle bad({0.0, {0.3, 0.3}}, 1.0, 1.0, 0.25);
  for (int quarter = 1; quarter < 4; ++quarter) {
    const double a = quarter * kPi / 2;
    const Point2 shift{3.0, -1.0};
    const auto moved = rigid_transform(curve, a, shift);
    auto move_rect = [&](const BasicRectangle& r) {
      const RigidFrame f = r.frame();
      const Point2 o{std::cos(a) * f.origin.x - std::sin(a) * f.origin.y + shift.x,
                     std::sin(a) * f.origin.x + std::cos(a) * f.origin.y + shift.y};
      return BasicRectangle({f.angle + a, o}, r.R(), r.D(), r.r());
    };
    CHECK(static_cast<bool>(is_basic_rectangle(move_rect(good), moved)) ==
          static_cast<bool>(is_basic_rectangle(good, curve)));
    CHECK(static_cast<bool>(is_basic_rectangle(move_rect(bad), moved)) ==
          static_cast<bool>(is_basic_rectangle(bad, curve)));
  }
}

TEST_CASE("graph extraction") {
  SUBCASE("flat line") {
    const auto slices = extract_graph(flat(), unit_rect());
    REQUIRE(slices.size() == 1);
    CHECK(slices[0].strand == GraphSlice::Strand::single);
    for (double g : slices[0].gs) CHECK(g == doctest::Approx(0.5));
    CHECK(slices[0].xs.front() == doctest::Approx(-1.0));
    CHECK(slices[0].xs.back() == doctest::Approx(1.0));
    for (std::size_t k = 1; k < slices[0].xs.size(); ++k) CHECK(slices[0].xs[k] > slices[0].xs[k - 1]);
  }
  SUBCASE("top of a big circle") {
    const auto c = circle(4096, 10.0, {}, 0.0001);
    const BasicRectangle rect({0.0, {0, 9.5}}, 1.0, 1.0, 0.2);
    REQUIRE(is_basic_rectangle(rect, c));
    const auto slices = extract_graph(c, rect);
    REQUIRE(slices.size() == 1);
    const auto& s = slices[0];
    // vertices lie on the circle exactly, so the analytic arc is the oracle
    for (std::size_t k = 0; k < s.xs.size(); ++k) {
      if (std::abs(s.xs[k]) >= 1.0) continue;
      CHECK(s.gs[k] == doctest::Approx(std::sqrt(100.0 - s.xs[k] * s.xs[k]) - 9.5).epsilon(1e-12));
    }
    const auto top = std::max_element(s.gs.begin(), s.gs.end()) - s.gs.begin();
    CHECK(std::abs(s.xs[static_cast<std::size_t>(top)]) < 0.02);
    for (std::size_t k = 1; k < s.slopes.size(); ++k) CHECK(s.slopes[k] <= s.slopes[k - 1]);
  }
  SUBCASE("two tail strands") {
    const auto spec = preset("tanh-hairpin");
    const auto g = build_gamma0(spec, 17.0, 128);
    const auto c = cap(g, 16, spec);
    const double R = 16 * spec.c / kPi;
    const BasicRectangle rect({0.0, {7.0, -spec.c}}, R, 2 * spec.c, 0.5);
    const auto slices = extract_graph(c, rect);
    REQUIRE(slices.size() == 2);
    CHECK(slices[0].strand == GraphSlice::Strand::upper);
    CHECK(slices[1].strand == GraphSlice::Strand::lower);
    CHECK(slices[0].gs[0] > slices[1].gs[0]);
  }
  SUBCASE("vertical tangent") {
    const auto c = circle(512, 1.0);
    const BasicRectangle rect({0.0, {0.9, -0.5}}, 0.2, 1.0, 0.1);
    CHECK_THROWS_AS(extract_graph(c, rect), DegenerateConfiguration);
  }
}

TEST_CASE("gradient bound") {
  const auto rect = unit_rect();
  const auto flat_slice = extract_graph(flat(), rect)[0];
  const auto ok = check_gradient_bound(flat_slice, rect);
  CHECK(ok);
  CHECK(ok.value == doctest::Approx(0.0));
  CHECK(ok.bound == doctest::Approx(1.05 * 2.0));

  GraphSlice steep;
  for (int k = 0; k <= 20; ++k) {
    const double x = -1.0 + 0.1 * k;
    steep.xs.push_back(x);
    steep.gs.push_back(0.5 + 3.0 * x * 0.01);
  }
  steep.slope_xs = {0.0};
  steep.slopes = {3.0 * rect.D() / rect.R()};
  CHECK_FALSE(check_gradient_bound(steep, rect));

  GraphSlice narrow;
  narrow.xs = {-0.2, 0.2};
  narrow.gs = {0.5, 0.5};
  CHECK_THROWS_AS(check_gradient_bound(narrow, rect), InvalidInput);
}

TEST_CASE("height bound") {
  const auto rect = unit_rect(0.2);
  const auto slice = extract_graph(flat(), rect)[0];
  const auto at0 = check_height_bound(slice, rect, 0.0);
  CHECK(at0);
  CHECK(at0.bound == doctest::Approx(0.2));
  const auto end = check_height_bound(slice, rect, 0.02);
  CHECK(end.bound < 1e-8);
  CHECK(end);
  CHECK_THROWS_AS(check_height_bound(slice, rect, 0.021), InvalidInput);
  const auto low = extract_graph(flat(0.1), rect)[0];
  CHECK_FALSE(check_height_bound(low, rect, 0.0));
  CHECK(check_height_bound(low, rect, 0.015));
}

TEST_CASE("graph persists under the flow inside a verified rectangle") {
  const auto curve = graph_box([](double x) { return 0.5 + 0.05 * std::sin(3 * x); }, 4.0, 4.0, 0.05);
  const auto rect = unit_rect(0.2);
  REQUIRE(is_basic_rectangle(rect, curve));
  FlowParams p;
  p.target_vertices = curve.size();
  const double t_end = rect.r() * rect.r() / 2;
  std::vector<double> ts;
  for (int k = 1; k <= 20; ++k) ts.push_back(t_end * k / 20);
  const auto tr = run_until(curve, t_end, ts, p);
  REQUIRE(tr.samples.size() == 21);
  for (const auto& s : tr.samples) {
    const auto slices = extract_graph(s.curve, rect);
    REQUIRE(slices.size() == 1);
    CHECK(check_gradient_bound(slices[0], rect));
    CHECK(check_height_bound(slices[0], rect, s.t));
  }
}

TEST_CASE("curvature sup") {
  const auto c = circle(2048, 2.0);
  const BasicRectangle rect({0.0, {0, 1.5}}, 0.5, 1.0, 0.2);
  REQUIRE(is_basic_rectangle(rect, c));
  CHECK(std::abs(curvature_sup(c, rect, 0) - 0.5) < 1e-2);
  CHECK(curvature_sup(c, rect, 1) < 1e-2);
  CHECK_THROWS_AS(curvature_sup(c, rect, 4), InvalidInput);
  CHECK_THROWS_AS(curvature_sup(circle(64, 2.0), rect, 0), InvalidInput);

  const auto e = test::ellipse(1024, 2.0, 1.0);
  const auto f = curvature(e);
  const double kmax = *std::max_element(f.kappa.begin(), f.kappa.end());
  for (double x0 : {-1.0, 0.0, 1.0}) {
    const BasicRectangle r({0.0, {x0, 0.3}}, 0.6, 1.2, 0.1);
    if (!is_basic_rectangle(r, e)) continue;
    CHECK(curvature_sup(e, r, 0) <= kmax);
  }
}

TEST_CASE("covers") {
  SUBCASE("unit circle") {
    const auto c = circle(512, 1.0);
    const auto rep = build_cover(c, 0.1);
    CHECK(rep.coverage_fraction == 1.0);
    CHECK(rep.rectangles.size() <= 64);
    // regression anchor
    CHECK(rep.rectangles.size() == 36);
    CHECK(rep.rectangles.size() == rep.kinds.size());
    CHECK(rep.arc_positions.size() == rep.rectangles.size());
    double rmin2 = INFINITY;
    for (const auto& r : rep.rectangles) {
      CHECK(r.r() >= 0.1);
      CHECK(is_basic_rectangle(r, c));
      rmin2 = std::min(rmin2, r.r() * r.r());
    }
    CHECK(rep.tbar == doctest::Approx(rmin2 / 2));
    // every vertex is inside some F*
    for (auto p : c.vertices()) {
      CHECK(std::any_of(rep.rectangles.begin(), rep.rectangles.end(),
                        [&](const BasicRectangle& r) { return star(r).contains(p); }));
    }
    CHECK(star_coverage(c, rep.rectangles) == 1.0);
  }
  SUBCASE("ellipse") {
    const auto e = test::ellipse(512, 2.0, 1.0);
    const auto rep = build_cover(e, 0.1);
    CHECK(rep.coverage_fraction == 1.0);
    CHECK(rep.tbar >= 0.5 * 0.1 * 0.1);
    for (auto p : e.vertices()) {
      CHECK(std::any_of(rep.rectangles.begin(), rep.rectangles.end(),
                        [&](const BasicRectangle& r) { return star(r).contains(p); }));
    }
  }
  SUBCASE("too thin for r_min") {
    const auto thin = test::ellipse(256, 2.0, 0.05);
    CHECK_THROWS_AS(build_cover(thin, 0.1), DegenerateConfiguration);
  }
  SUBCASE("partial coverage") {
    const auto c = circle(512, 1.0);
    const auto rep = build_cover(c, 0.1);
    const std::vector<BasicRectangle> first(rep.rectangles.begin(), rep.rectangles.begin() + 1);
    const double f = star_coverage(c, first);
    CHECK(f > 0.0);
    CHECK(f < 1.0);
  }
}

TEST_CASE("cover of a flowing ellipse stays basic") {
  // edges clipped at the bottom of the strip once gave a spurious second
  // crossing at t = 0.0015
  const auto e = test::ellipse(512, 1.5, 1.0);
  const auto rep = build_cover(e, 0.05, 64);
  std::vector<double> ts;
  for (int k = 1; k <= 10; ++k) ts.push_back(rep.tbar * k / 10);
  FlowParams p;
  p.target_vertices = 512;
  const auto tr = run_until(e, rep.tbar, ts, p);
  for (const auto& s : tr.samples) {
    for (const auto& r : rep.rectangles) {
      const auto chk = is_basic_rectangle(r, s.curve, 64);
      CHECK_MESSAGE(chk.basic, "t=" << s.t << ": " << chk.reason);
    }
  }
}
