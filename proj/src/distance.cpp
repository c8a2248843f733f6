#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "csf/geometry.hpp"
#include "csf/spatial.hpp"

namespace csf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Quadratic {
  double a = 0.0, b = 0.0, c = 0.0;
  double operator()(double t) const noexcept { return (a * t + b) * t + c; }
  double slope(double t) const noexcept { return 2.0 * a * t + b; }
  Quadratic operator-(const Quadratic& o) const noexcept { return {a - o.a, b - o.b, c - o.c}; }
};

// Squared distance from p(t) = p0 + t v to one target segment, as a
// piecewise quadratic in t. The pieces are: nearest to q0, nearest to an
// interior point, nearest to q1; the projection parameter u(t) is linear.
class SegmentDistance {
 public:
  SegmentDistance(Point2 p0, Point2 p1, Point2 q0, Point2 q1)
      : p0_(p0), p1_(p1), v_(p1 - p0), q0_(q0), q1_(q1) {
    const Point2 v = v_;
    const Point2 e = q1 - q0;
    len2_ = norm2(e);
    at_q0_ = point_piece(q0);
    at_q1_ = point_piece(q1);
    if (len2_ > 0.0) {
      u0_ = dot(p0 - q0, e) / len2_;
      u1_ = dot(v, e) / len2_;
      const double c0 = cross(e, p0 - q0);
      const double c1 = cross(e, v);
      interior_ = {c1 * c1 / len2_, 2.0 * c0 * c1 / len2_, c0 * c0 / len2_};
    }
  }

  double value(double t) const noexcept {
    // measured from the nearer end so that t = 0 and t = 1 are exact
    const Point2 p = t <= 0.5 ? p0_ + t * v_ : p1_ - (1.0 - t) * v_;
    return point_segment_distance2(p, q0_, q1_);
  }

  // Piece active just to the right of t.
  const Quadratic& piece_right(double t) const noexcept {
    if (len2_ == 0.0) return at_q0_;
    const double u = u0_ + u1_ * t;
    if (u < 0.0 || (u == 0.0 && u1_ <= 0.0)) return at_q0_;
    if (u > 1.0 || (u == 1.0 && u1_ >= 0.0)) return at_q1_;
    return interior_;
  }

  void breakpoints(double lo, double hi, std::vector<double>& out) const {
    if (len2_ == 0.0 || u1_ == 0.0) return;
    for (double target : {0.0, 1.0}) {
      const double t = (target - u0_) / u1_;
      if (t > lo && t < hi) out.push_back(t);
    }
  }

 private:
  Quadratic point_piece(Point2 q) const noexcept {
    const Point2 d = p0_ - q;
    return {norm2(v_), 2.0 * dot(d, v_), norm2(d)};
  }

  Point2 p0_, p1_, v_, q0_, q1_;
  double len2_ = 0.0;
  double u0_ = 0.0, u1_ = 0.0;
  Quadratic at_q0_, at_q1_, interior_;
};

// Real roots of q in (lo, hi], ascending.
void roots_in(const Quadratic& q, double lo, double hi, double tol, std::vector<double>& out) {
  out.clear();
  if (std::abs(q.a) <= tol) {
    if (std::abs(q.b) <= tol) return;
    const double r = -q.c / q.b;
    if (r > lo && r <= hi) out.push_back(r);
    return;
  }
  const double disc = q.b * q.b - 4.0 * q.a * q.c;
  if (disc < 0.0) return;
  const double sq = std::sqrt(disc);
  const double w = -0.5 * (q.b + std::copysign(sq, q.b));
  double r1 = w / q.a;
  double r2 = w != 0.0 ? q.c / w : r1;
  if (r1 > r2) std::swap(r1, r2);
  if (r1 > lo && r1 <= hi) out.push_back(r1);
  if (r2 > lo && r2 <= hi && r2 != r1) out.push_back(r2);
}

// Maximum over t in [0, 1] of min_j dist(p(t), S_j), tracking which target
// segment is nearest and jumping from one switch point to the next. Every
// distance is convex in t, so the maximum sits at an endpoint or a switch.
double envelope_maximum(Point2 p0, Point2 p1, PolylineView to, const std::vector<std::size_t>& local) {
  const Point2 v = p1 - p0;
  std::vector<SegmentDistance> feats;
  feats.reserve(local.size());
  for (auto s : local) feats.emplace_back(p0, p1, to.segment_begin(s), to.segment_end(s));

  auto envelope = [&](double t, std::size_t* arg) {
    double best = kInf;
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < feats.size(); ++j) {
      const double f = feats[j].value(t);
      if (f < best) {
        best = f;
        best_j = j;
      }
    }
    if (arg) *arg = best_j;
    return best;
  };

  const double scale2 = norm2(v) + 1e-300;
  auto select = [&](double t) {
    std::size_t arg = 0;
    const double fmin = envelope(t, &arg);
    const double tol = 1e-12 * (fmin + scale2);
    double best_slope = kInf;
    std::size_t pick = arg;
    for (std::size_t j = 0; j < feats.size(); ++j) {
      if (feats[j].value(t) - fmin > tol) continue;
      const double slope = feats[j].piece_right(t).slope(t);
      if (slope < best_slope) {
        best_slope = slope;
        pick = j;
      }
    }
    return pick;
  };

  double best = std::max(envelope(0.0, nullptr), envelope(1.0, nullptr));
  double t = 0.0;
  std::size_t cur = select(0.0);
  std::vector<double> knots;
  std::vector<double> roots;
  const std::size_t max_iter = 8 * feats.size() + 16;
  bool finished = false;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    double next_t = kInf;
    std::size_t next_j = cur;
    for (std::size_t j = 0; j < feats.size(); ++j) {
      if (j == cur) continue;
      knots.assign({t, 1.0});
      feats[cur].breakpoints(t, 1.0, knots);
      feats[j].breakpoints(t, 1.0, knots);
      std::sort(knots.begin(), knots.end());
      for (std::size_t k = 0; k + 1 < knots.size() && knots[k] < next_t; ++k) {
        const double lo = knots[k];
        const double hi = std::min(knots[k + 1], next_t);
        const Quadratic g = feats[j].piece_right(lo) - feats[cur].piece_right(lo);
        const double tol = 1e-13 * (std::abs(g.c) + std::abs(g.b) + std::abs(g.a) + scale2);
        if (lo > t && g(lo) < -tol) {
          next_t = lo;
          next_j = j;
          break;
        }
        roots_in(g, lo, hi, 1e-300, roots);
        bool found = false;
        for (double r : roots) {
          if (r <= t) continue;
          const double after = std::min(hi, r + 1e-9 * (hi - lo + 1e-300));
          if (g.slope(r) < 0.0 || g(after) < 0.0) {
            if (r < next_t) {
              next_t = r;
              next_j = j;
            }
            found = true;
            break;
          }
        }
        if (found) break;
      }
    }
    if (!(next_t < 1.0)) {
      finished = true;
      break;
    }
    best = std::max(best, envelope(next_t, nullptr));
    t = next_t;
    const std::size_t chosen = select(t);
    cur = chosen == cur ? next_j : chosen;
  }
  if (!finished) {
    // Cycling on near-ties; sample the rest of the edge instead.
    constexpr int kSamples = 4096;
    for (int k = 1; k < kSamples; ++k) {
      best = std::max(best, envelope(t + (1.0 - t) * k / kSamples, nullptr));
    }
  }
  return std::sqrt(best);
}

}  // namespace

double directed_hausdorff(PolylineView from, PolylineView to) {
  if (from.size() == 0 || to.size() == 0) return 0.0;
  const SegmentGrid grid(to);
  if (to.segment_count() == 0) {
    double best = 0.0;
    for (const auto& p : from.points) best = std::max(best, distance(p, to.points[0]));
    return best;
  }
  double best = 0.0;
  for (const auto& p : from.points) best = std::max(best, grid.nearest(p));
  for (std::size_t s = 0; s < from.segment_count(); ++s) {
    const Point2 p0 = from.segment_begin(s);
    const Point2 p1 = from.segment_end(s);
    std::size_t j0 = 0;
    std::size_t j1 = 0;
    grid.nearest(p0, &j0);
    grid.nearest(p1, &j1);
    // The distance to a fixed segment is convex along the edge, so it is
    // bounded by its endpoint values.
    auto seg_max = [&](std::size_t j) {
      const Point2 q0 = to.segment_begin(j);
      const Point2 q1 = to.segment_end(j);
      return std::sqrt(std::max(point_segment_distance2(p0, q0, q1),
                                point_segment_distance2(p1, q0, q1)));
    };
    const double upper = std::min(seg_max(j0), seg_max(j1));
    if (upper <= best) continue;
    std::vector<std::size_t> local;
    bool shared = false;
    for (auto t : grid.candidates(segment_bbox(p0, p1).inflated(upper))) {
      const Point2 q0 = to.segment_begin(t), q1 = to.segment_end(t);
      if ((q0 == p0 && q1 == p1) || (q0 == p1 && q1 == p0)) {
        shared = true;
        break;
      }
      if (segment_segment_distance(p0, p1, to.segment_begin(t), to.segment_end(t)) <= upper) {
        local.push_back(t);
      }
    }
    if (shared) continue;
    best = std::max(best, envelope_maximum(p0, p1, to, local));
  }
  return best;
}

double hausdorff_distance(PolylineView a, PolylineView b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace csf
