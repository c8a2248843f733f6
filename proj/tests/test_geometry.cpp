#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "csf/error.hpp"
#include "csf/geometry.hpp"
#include "csf/spatial.hpp"
#include "shapes.hpp"

using namespace csf;
using csf::test::circle;
using csf::test::ellipse;

namespace {

constexpr double kPi = std::numbers::pi;

double ellipse_kappa(double a, double b, double th) {
  const double s = std::sin(th), c = std::cos(th);
  return a * b / std::pow(a * a * s * s + b * b * c * c, 1.5);
}

// Brute-force directed distance: dense samples along every edge of `from`
// against every edge of `to`.
double sampled_directed(PolylineView from, PolylineView to, int per_edge) {
  double best = 0.0;
  for (std::size_t s = 0; s < from.segment_count(); ++s) {
    const Point2 a = from.segment_begin(s), b = from.segment_end(s);
    for (int k = 0; k <= per_edge; ++k) {
      const Point2 p = a + (static_cast<double>(k) / per_edge) * (b - a);
      double d = INFINITY;
      for (std::size_t t = 0; t < to.segment_count(); ++t) {
        d = std::min(d, point_segment_distance(p, to.segment_begin(t), to.segment_end(t)));
      }
      best = std::max(best, d);
    }
  }
  return best;
}

ClosedCurve wobbly(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(-0.15, 0.15);
  std::uniform_real_distribution<double> jitter(-1e-3, 1e-3);
  const double a2 = amp(rng), a3 = amp(rng), a5 = amp(rng), ph = amp(rng) * 10;
  std::vector<Point2> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double th = 2 * kPi * k / n;
    const double r = 1 + a2 * std::cos(2 * th + ph) + a3 * std::sin(3 * th) + a5 * std::cos(5 * th);
    v[k] = {r * std::cos(th) + jitter(rng), r * std::sin(th)};
  }
  return ClosedCurve(std::move(v));
}

}  // namespace

TEST_CASE("curvature of regular polygons and lines") {
  const auto c = circle(256, 2.0);
  const auto f = curvature(c);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(std::abs(f.kappa[i] - 0.5) < 1e-3);
    CHECK(std::abs(norm(f.normal[i]) - 1.0) < 1e-12);
    // normal points at the centre
    CHECK(dot(f.normal[i], c[i]) < 0.0);
  }

  const auto st = test::stadium(4.0, 1.0, 16, 32);
  const auto fs = curvature(st);
  CHECK(std::abs(fs.kappa[5]) < 1e-12);
  CHECK(std::abs(fs.kappa[16 + 32 + 5]) < 1e-12);
}

TEST_CASE("curvature vector does not depend on traversal direction") {
  const auto c = wobbly(200, 7);
  const auto r = c.reversed();
  const auto f = curvature(c);
  const auto g = curvature(r);
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = f.vector(i), b = g.vector(n - 1 - i);
    CHECK(norm(a - b) < 1e-9 * (1 + norm(a)));
  }
}

TEST_CASE("ellipse curvature against the analytic formula") {
  const std::size_t n = 512;
  const auto e = ellipse(n, 2.0, 1.0);
  const auto f = curvature(e);
  for (std::size_t k = 0; k < n; k += 7) {
    const double ref = ellipse_kappa(2.0, 1.0, 2 * kPi * k / n);
    CHECK(std::abs(f.kappa[k] - ref) <= 0.01 * ref);
  }
}

TEST_CASE("curvature error decays at second order") {
  double prev = 0.0;
  for (std::size_t n : {64, 128, 256, 512}) {
    const auto e = ellipse(n, 2.0, 1.0);
    const auto f = curvature(e);
    double err = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      err = std::max(err, std::abs(f.kappa[k] - ellipse_kappa(2.0, 1.0, 2 * kPi * k / n)));
    }
    if (prev > 0.0) {
      const double rate = std::log2(prev / err);
      CHECK(rate > 1.8);
    }
    prev = err;
    // the inscribed n-gon of a circle is exact up to rounding
    const auto c = circle(n, 1.0);
    const auto fc = curvature(c);
    for (double k : fc.kappa) CHECK(std::abs(k - 1.0) < 1e-9);
  }
}

TEST_CASE("degenerate triple names the vertex") {
  std::vector<Point2> v = {{0, 0}, {1, 0}, {0, 0.0}, {2, 1}, {1, 2}, {0, 2}, {-1, 1}, {-1, 0.5}};
  v[2] = {0.5, 0.5};
  auto c = ClosedCurve(v, ClosedCurve::Normalize::keep);
  CHECK_NOTHROW(curvature(c));
  std::vector<Point2> w = {{0, 0}, {1, 0}, {0, 0}, {2, 1}, {1, 2}, {0, 2}, {-1, 1}, {-1, 0.5}};
  ClosedCurve d(w, ClosedCurve::Normalize::keep);
  try {
    curvature(d);
    FAIL("expected DegenerateConfiguration");
  } catch (const DegenerateConfiguration& e) {
    CHECK(e.index() == 1);
  }
}

TEST_CASE("area and length") {
  CHECK(enclosed_area(test::square(1.0, 2)) == 1.0);
  CHECK(arc_length(test::square(1.0, 2)) == 4.0);
  CHECK(std::abs(enclosed_area(circle(1024, 1.0)) - kPi) < 1e-4);
  CHECK(std::abs(arc_length(circle(1024, 1.0)) - 2 * kPi) < 1e-4);
  CHECK(std::abs(enclosed_area(ellipse(1024, 2.0, 1.0)) - 2 * kPi) < 1e-3);

  const auto c = wobbly(300, 3);
  const auto scaled = rigid_transform(c, 0.0, {0, 0});
  std::vector<Point2> big;
  for (auto p : c.vertices()) big.push_back(4.0 * p);
  CHECK(arc_length(ClosedCurve(big)) == doctest::Approx(4.0 * arc_length(c)).epsilon(1e-14));
  CHECK(arc_length(scaled) == arc_length(c));

  auto fig = test::figure_eight(64);
  CHECK_THROWS_AS(enclosed_area(ClosedCurve(fig, ClosedCurve::Normalize::keep)), InvalidInput);
}

TEST_CASE("area and length are invariant under rigid motions") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto c = wobbly(257, seed);
    const auto m = rigid_transform(c, 0.3 * seed, {1.5 * seed, -2.0});
    CHECK(std::abs(enclosed_area(m) / enclosed_area(c) - 1) < 1e-12);
    CHECK(std::abs(arc_length(m) / arc_length(c) - 1) < 1e-12);
  }
}

TEST_CASE("orientation is normalized and signed area agrees") {
  const auto c = circle(64, 1.0);
  const auto r = c.reversed();
  CHECK(c.orientation() == Orientation::ccw);
  CHECK(r.orientation() == Orientation::cw);
  CHECK(signed_area(r.vertices()) < 0);
  ClosedCurve n(std::vector<Point2>(r.vertices().begin(), r.vertices().end()));
  CHECK(n.orientation() == Orientation::ccw);
  CHECK(signed_area(n.vertices()) > 0);
  CHECK_THROWS_AS(ClosedCurve(std::vector<Point2>(5, Point2{0, 0})), InvalidInput);
}

TEST_CASE("resample") {
  const auto c = circle(64, 1.0);
  const auto r = resample(c, 256);
  CHECK(r.size() == 256);
  CHECK(std::abs(enclosed_area(r) - enclosed_area(c)) < 1e-3);
  CHECK_THROWS_AS(resample(c, 7), InvalidInput);

  const auto same = resample(c, 64);
  for (std::size_t i = 0; i < 64; ++i) CHECK(distance(same[i], c[i]) < 1e-9);

  // ellipse sampled uniformly in angle has very uneven edges
  const auto e = ellipse(400, 2.0, 1.0);
  const auto u = resample(e, 512);
  double lo = INFINITY, hi = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double h = distance(u[i], u[u.next(i)]);
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  CHECK(hi / lo <= 1.01);
  CHECK(u.orientation() == Orientation::ccw);
  CHECK(is_embedded(u));
}

TEST_CASE("resampling keeps orientation and embeddedness") {
  for (std::uint64_t seed = 10; seed < 20; ++seed) {
    const auto c = wobbly(150, seed);
    REQUIRE(is_embedded(c));
    const auto r = resample(c, 97);
    CHECK(is_embedded(r));
    CHECK(r.orientation() == c.orientation());
  }
}

TEST_CASE("embeddedness") {
  CHECK(is_embedded(circle(128, 1.0)));
  CHECK_FALSE(is_embedded(ClosedCurve(test::figure_eight(64), ClosedCurve::Normalize::keep)));
  // a spike folding back along its incoming edge
  const auto c = circle(16, 1.0);
  std::vector<Point2> v(c.vertices().begin(), c.vertices().end());
  v.insert(v.begin() + 4, {0.5 * (v[3].x + v[4].x) * 1.0, 0.5 * (v[3].y + v[4].y)});
  v.insert(v.begin() + 5, v[3] + 0.5 * (v[4] - v[3]) + 0.25 * (v[3] - v[5]));
  CHECK_FALSE(is_embedded(ClosedCurve(v, ClosedCurve::Normalize::keep)));
}

TEST_CASE("intersection counts") {
  CHECK(count_intersections(circle(200, 1.0), circle(200, 2.0)) == 0);
  CHECK(count_intersections(circle(200, 1.0), circle(200, 1.0, {1, 0}, 0.01)) == 2);

  // oracle: sign changes of r_ellipse(theta) - 1 over a dense angle grid
  int changes = 0;
  const int m = 100000;
  auto radial = [](double th) {
    const double c = std::cos(th), s = std::sin(th);
    return 1.0 / std::sqrt(c * c / (1.5 * 1.5) + s * s / (0.5 * 0.5)) - 1.0;
  };
  for (int k = 0; k < m; ++k) {
    if ((radial(2 * kPi * k / m) > 0) != (radial(2 * kPi * (k + 1) / m) > 0)) ++changes;
  }
  REQUIRE(changes == 4);
  const auto a = circle(300, 1.0, {0, 0}, 0.013);
  const auto b = ellipse(300, 1.5, 0.5);
  CHECK(count_intersections(a, b) == 4);
  CHECK(count_intersections(b, a) == 4);
}

TEST_CASE("intersection count is symmetric on random generic pairs") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto a = wobbly(120, seed);
    const auto b = rigid_transform(wobbly(90, seed + 100), 0.1 * seed, {0.2, 0.1 * seed - 0.5});
    std::size_t ab = 0, ba = 0;
    try {
      ab = count_intersections(a, b);
      ba = count_intersections(b, a);
    } catch (const DegenerateConfiguration&) {
      continue;
    }
    CHECK(ab == ba);
    CHECK(ab % 2 == 0);
  }
}

TEST_CASE("touching curves are reported as degenerate") {
  const auto a = test::square(1.0, 2);
  std::vector<Point2> v;
  for (auto p : a.vertices()) v.push_back(p + Point2{1.0, 0.0});
  CHECK_THROWS_AS(count_intersections(a, ClosedCurve(v)), DegenerateConfiguration);
  // perturbing resolves it one way or the other
  const auto p = perturbed(ClosedCurve(v), 1e-9, 42);
  try {
    const auto k = count_intersections(a, p);
    CHECK(k % 2 == 0);
  } catch (const DegenerateConfiguration&) {
    // shallow crossings can still trip the angle guard
  }
}

TEST_CASE("hausdorff distance") {
  const auto c = wobbly(100, 5);
  CHECK(hausdorff_distance(c, c) == 0.0);
  CHECK(std::abs(hausdorff_distance(circle(1024, 1.0), circle(1024, 2.0)) - 1.0) < 1e-3);

  const auto e = ellipse(256, 20.0, 10.0);
  const auto t = rigid_transform(e, 0.0, {0.3, 0.0});
  const double ref = std::max(sampled_directed(e, t, 64), sampled_directed(t, e, 64));
  const double d = hausdorff_distance(e, t);
  CHECK(std::abs(d - 0.3) < 1e-3);
  CHECK(d >= ref - 1e-12);
  CHECK(d - ref < 1e-4);
}

TEST_CASE("directed distance agrees with dense sampling") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto a = wobbly(40 + 5 * seed, seed);
    const auto b = rigid_transform(wobbly(50, seed + 50), 0.05 * seed, {0.1, -0.05});
    const double exact = directed_hausdorff(a, b);
    const double sampled = sampled_directed(a, b, 400);
    CHECK(exact >= sampled - 1e-12);
    CHECK(exact - sampled < 1e-4);
    CHECK(hausdorff_distance(a, b) == hausdorff_distance(b, a));
  }
  // open polylines too
  std::vector<Point2> p = {{0, 0}, {1, 0}, {2, 0}};
  std::vector<Point2> q = {{0, 1}, {2, 1}};
  CHECK(std::abs(directed_hausdorff(OpenPolyline(p), OpenPolyline(q)) - 1.0) < 1e-15);
  std::vector<Point2> r = {{0, 0}, {1, 0}};
  CHECK(std::abs(directed_hausdorff(OpenPolyline(p), OpenPolyline(r)) - 1.0) < 1e-15);
  CHECK(directed_hausdorff(OpenPolyline(r), OpenPolyline(p)) == 0.0);
}

TEST_CASE("hausdorff triangle inequality") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto a = wobbly(60, seed);
    const auto b = wobbly(70, seed + 20);
    const auto c = wobbly(80, seed + 40);
    const double ab = hausdorff_distance(a, b), bc = hausdorff_distance(b, c), ac = hausdorff_distance(a, c);
    CHECK(ac <= ab + bc + 1e-12);
  }
}

TEST_CASE("point and curve distances") {
  const auto c = circle(512, 1.0);
  CHECK(std::abs(point_polyline_distance({3, 0}, c) - 2.0) < 1e-12);
  CHECK(std::abs(curve_distance(c, circle(512, 2.0)) - 1.0) < 1e-4);
  CHECK(curve_distance(c, circle(512, 1.0, {1, 0})) == 0.0);
}
