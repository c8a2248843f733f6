#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "csf/error.hpp"
#include "csf/flow.hpp"
#include "csf/geometry.hpp"
#include "shapes.hpp"

using namespace csf;
using csf::test::circle;
using csf::test::ellipse;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> grid(double t_end, int n) {
  std::vector<double> ts;
  for (int k = 1; k <= n; ++k) ts.push_back(t_end * k / n);
  return ts;
}

double mean_radius(const ClosedCurve& c, Point2 centre = {}) {
  double s = 0;
  for (auto p : c.vertices()) s += distance(p, centre);
  return s / static_cast<double>(c.size());
}

}  // namespace

TEST_CASE("params validation") {
  FlowParams p;
  CHECK_NOTHROW(p.validate());
  p.cfl = 1.0;
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p = {};
  p.remesh_ratio = 1.0;
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p = {};
  p.target_vertices = 7;
  CHECK_THROWS_AS(p.validate(), InvalidInput);
}

TEST_CASE("one step on the unit circle shrinks the radius by dt") {
  const auto c = circle(256, 1.0);
  const auto s0 = FlowState::make(c);
  FlowParams p;
  const double dt = stable_dt(c.vertices(), p);
  const auto s1 = step(s0, p, dt);
  // the polygon's own curvature is the chord-circle value, very close to 1
  const double drop = mean_radius(s0.curve) - mean_radius(s1.curve);
  CHECK(std::abs(drop - dt) < 1e-6 * dt + 1e-3 * dt);
  CHECK(s1.t == doctest::Approx(dt));
  CHECK(s1.step_count == 1);
}

TEST_CASE("flat stretches do not move") {
  const auto st = test::stadium(4.0, 1.0, 16, 32);
  FlowParams p;
  p.remesh_ratio = 100.0;
  const auto s1 = step(FlowState::make(st), p);
  for (std::size_t k = 2; k < 15; ++k) {
    CHECK(distance(s1.curve[k], st[k]) < 1e-10);
    CHECK(distance(s1.curve[16 + 32 + k], st[16 + 32 + k]) < 1e-10);
  }
}

TEST_CASE("ellipse stays convex step by step") {
  FlowParams p;
  p.target_vertices = 128;
  auto s = FlowState::make(ellipse(128, 2.0, 1.0));
  for (int k = 0; k < 200; ++k) {
    s = step(s, p);
    const auto f = curvature(s.curve);
    CHECK(*std::min_element(f.kappa.begin(), f.kappa.end()) > 0.0);
  }
}

TEST_CASE("state fields match the curve") {
  const auto s = FlowState::make(ellipse(256, 2.0, 1.0), 0.25, 7);
  CHECK(s.area == doctest::Approx(enclosed_area(s.curve)).epsilon(1e-12));
  CHECK(s.length == doctest::Approx(arc_length(s.curve)).epsilon(1e-12));
  CHECK(s.t == 0.25);
  CHECK(s.step_count == 7);
}

TEST_CASE("unit circle extinction and self-similarity") {
  FlowParams p;
  p.target_vertices = 128;
  const auto ts = grid(0.45, 9);
  const auto tr = run_until(circle(128, 1.0), 1.0, ts, p);
  CHECK(tr.termination == Termination::extinct);
  CHECK(tr.extinction_time == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::abs(tr.extinction_time - 0.5) < 0.005);
  REQUIRE(tr.samples.size() == ts.size() + 1);
  for (const auto& s : tr.samples) {
    const double r = circle_radius(1.0, s.t);
    double dev = 0;
    const double m = mean_radius(s.curve);
    for (auto q : s.curve.vertices()) dev = std::max(dev, std::abs(distance(q, {}) - m));
    CHECK(dev < 1e-3 * r);
    CHECK(std::abs(m - r) < 2e-3);
  }
}

TEST_CASE("ellipse lifespan and area law") {
  FlowParams p;
  p.target_vertices = 128;
  const auto c = ellipse(128, 2.0, 1.0);
  const double a0 = enclosed_area(c);
  const auto tr = run_until(c, 2.0, grid(0.95, 19), p);
  CHECK(tr.termination == Termination::extinct);
  CHECK(std::abs(tr.extinction_time - a0 / (2 * kPi)) < 0.01);
  double prev = INFINITY;
  for (const auto& s : tr.samples) {
    CHECK(std::abs(s.area - (a0 - 2 * kPi * s.t)) <= 0.005 * a0);
    CHECK(s.area < prev);
    prev = s.area;
  }
  // roundness improves towards extinction
  const auto& late = tr.samples.back();
  const auto& mid = *std::find_if(tr.samples.begin(), tr.samples.end(), [](auto& s) { return s.t >= 0.5; });
  CHECK(isoperimetric_ratio(late) <= isoperimetric_ratio(mid));
}

TEST_CASE("semi-implicit scheme obeys the area law") {
  FlowParams p;
  p.scheme = Scheme::semi_implicit;
  p.target_vertices = 128;
  p.max_dt = 1e-3;
  const auto c = ellipse(128, 2.0, 1.0);
  const double a0 = enclosed_area(c);
  const auto tr = run_until(c, 2.0, grid(0.9, 9), p);
  CHECK(tr.termination == Termination::extinct);
  for (const auto& s : tr.samples) CHECK(std::abs(s.area - (a0 - 2 * kPi * s.t)) <= 0.005 * a0);
}

TEST_CASE("run_until input errors") {
  FlowParams p;
  const auto c = circle(64, 1.0);
  std::vector<double> bad{0.2, 0.1};
  CHECK_THROWS_AS(run_until(c, 1.0, bad, p), InvalidInput);
  std::vector<double> late{2.0};
  CHECK_THROWS_AS(run_until(c, 1.0, late, p), InvalidInput);
  CHECK_THROWS_AS(run_until(ClosedCurve(test::figure_eight(64), ClosedCurve::Normalize::keep), 1.0, {}, p),
                  InvalidInput);
}

TEST_CASE("sample times are hit exactly") {
  FlowParams p;
  p.target_vertices = 64;
  const std::vector<double> ts{0.01, 0.0137, 0.05};
  const auto tr = run_until(circle(64, 1.0), 0.05, ts, p);
  REQUIRE(tr.samples.size() == 4);
  for (std::size_t k = 0; k < ts.size(); ++k) CHECK(tr.samples[k + 1].t == doctest::Approx(ts[k]).epsilon(1e-12));
  CHECK(tr.termination == Termination::time_reached);
}

TEST_CASE("circle radius") {
  CHECK(circle_radius(1, 0) == 1.0);
  CHECK(circle_radius(1, 0.375) == doctest::Approx(0.5));
  const double delta = 1e-6;
  CHECK(circle_radius(2.0, 2.0 - delta) == doctest::Approx(std::sqrt(2 * delta)));
  CHECK_THROWS_AS(circle_radius(1, 0.5), InvalidInput);
}

TEST_CASE("grim reaper point") {
  CHECK(grim_reaper_point(0, 0) == Point2{0, 0});
  CHECK(grim_reaper_point(0, 3) == Point2{3, 0});
  const auto q = grim_reaper_point(kPi / 3, 0);
  CHECK(q.x == doctest::Approx(std::log(2.0)));
  CHECK(q.y == doctest::Approx(1.0471975511965976));
  CHECK_THROWS_AS(grim_reaper_point(kPi / 2, 0), InvalidInput);
}

TEST_CASE("isoperimetric ratio") {
  CHECK(isoperimetric_ratio(FlowState::make(circle(512, 1.0))) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(isoperimetric_ratio(FlowState::make(test::square(1.0, 4))) == doctest::Approx(16 / (4 * kPi)));
  auto dead = FlowState::make(circle(64, 1.0));
  dead.area = 0.0;
  CHECK_THROWS_AS(isoperimetric_ratio(dead), InvalidInput);
}

TEST_CASE("avoidance of nested circles") {
  FlowParams p;
  p.target_vertices = 96;
  const auto ts = grid(0.48, 24);
  const auto inner = run_until(circle(96, 1.0), 0.48, ts, p);
  const auto outer = run_until(circle(96, 2.0), 0.48, ts, p);
  const auto rep = check_avoidance(inner, outer);
  CHECK(rep.disjoint);
  for (double d : rep.min_distance) CHECK(d > 0.0);
  CHECK(rep.min_distance.front() == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("far apart copies keep their distance") {
  FlowParams p;
  p.target_vertices = 64;
  const auto ts = grid(0.3, 6);
  const auto a = run_until(circle(64, 1.0), 0.3, ts, p);
  const auto b = run_until(circle(64, 1.0, {10, 0}), 0.3, ts, p);
  const auto rep = check_avoidance(a, b);
  CHECK(rep.disjoint);
  for (double d : rep.min_distance) CHECK(d >= rep.min_distance.front() - 1e-2);
}

TEST_CASE("small circle inside an ellipse dies first") {
  FlowParams p;
  p.target_vertices = 96;
  const auto ts = grid(0.12, 12);
  const auto inner = run_until(circle(96, 0.5), 0.2, ts, p);
  const auto outer = run_until(ellipse(128, 2.0, 1.0), 0.12, ts, p);
  CHECK(std::abs(inner.extinction_time - 0.125) < 0.005);
  CHECK(check_avoidance(inner, outer).disjoint);
}

TEST_CASE("avoidance rejects mismatched grids") {
  FlowParams p;
  p.target_vertices = 64;
  const std::vector<double> t1{0.1}, t2{0.2};
  const auto a = run_until(circle(64, 1.0), 0.2, t1, p);
  const auto b = run_until(circle(64, 1.0), 0.2, t2, p);
  CHECK_THROWS_AS(check_avoidance(a, b), InvalidInput);
}

TEST_CASE("intersection counts never increase") {
  FlowParams p;
  p.target_vertices = 128;
  const auto ts = grid(0.3, 30);
  SUBCASE("two unit circles") {
    const auto a = run_until(circle(128, 1.0, {}, 0.01), 0.3, ts, p);
    const auto b = run_until(circle(128, 1.0, {1, 0}, 0.02), 0.3, ts, p);
    const auto rep = intersection_monotonicity(a, b);
    CHECK(rep.non_increasing);
    REQUIRE(rep.counts.front());
    CHECK(*rep.counts.front() == 2);
    for (const auto& c : rep.counts)
      if (c) CHECK(*c <= 2);
  }
  SUBCASE("circle against ellipse") {
    const auto a = run_until(circle(128, 1.0, {}, 0.013), 0.3, ts, p);
    const auto b = run_until(ellipse(128, 1.5, 0.5, {}, 0.021), 0.3, ts, p);
    const auto rep = intersection_monotonicity(a, b);
    REQUIRE(rep.counts.front());
    CHECK(*rep.counts.front() == 4);
    CHECK(rep.non_increasing);
    CHECK(rep.violations == 0);
  }
  SUBCASE("disjoint") {
    const auto a = run_until(circle(64, 1.0), 0.3, ts, p);
    const auto b = run_until(circle(64, 1.0, {5, 0}), 0.3, ts, p);
    const auto rep = intersection_monotonicity(a, b);
    for (const auto& c : rep.counts) CHECK(c.value_or(99) == 0);
  }
}

TEST_CASE("convexity is preserved along a trajectory") {
  FlowParams p;
  p.target_vertices = 128;
  const auto tr = run_until(ellipse(128, 3.0, 1.0), 1.0, grid(1.0, 20), p);
  for (const auto& s : tr.samples) {
    const auto f = curvature(s.curve);
    CHECK(*std::min_element(f.kappa.begin(), f.kappa.end()) > 0.0);
  }
}
