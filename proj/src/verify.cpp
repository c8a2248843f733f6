#include "csf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "csf/error.hpp"
#include "csf/geometry.hpp"
#include "csf/spatial.hpp"

namespace csf {

Point2 RigidFrame::to_world(Point2 p) const noexcept {
  const double c = std::cos(angle), s = std::sin(angle);
  return origin + Point2{c * p.x - s * p.y, s * p.x + c * p.y};
}

Point2 RigidFrame::to_local(Point2 w) const noexcept {
  const double c = std::cos(angle), s = std::sin(angle);
  const Point2 d = w - origin;
  return {c * d.x + s * d.y, -s * d.x + c * d.y};
}

BasicRectangle::BasicRectangle(RigidFrame frame, double R, double D, double r)
    : frame_(frame), R_(R), D_(D), r_(r) {
  if (!(R > 0.0) || !std::isfinite(R)) throw InvalidInput("basic rectangle needs R > 0");
  if (!(D > 0.0) || !std::isfinite(D)) throw InvalidInput("basic rectangle needs D > 0");
  if (!(r > 0.0 && r < D / 2.0)) throw InvalidInput("basic rectangle needs 0 < r < D/2");
}

bool BasicRectangle::contains(Point2 w) const noexcept {
  const Point2 p = frame_.to_local(w);
  return std::abs(p.x) <= R_ && p.y >= 0.0 && p.y <= D_;
}

std::array<Point2, 4> BasicRectangle::corners() const noexcept {
  return {frame_.to_world({-R_, 0.0}), frame_.to_world({R_, 0.0}), frame_.to_world({R_, D_}),
          frame_.to_world({-R_, D_})};
}

BasicRectangle star(const BasicRectangle& rect) {
  return BasicRectangle(rect.frame(), rect.R() / 4.0, rect.D(), rect.r());
}

namespace {

std::vector<Point2> to_local(const RigidFrame& f, std::span<const Point2> pts) {
  std::vector<Point2> out;
  out.reserve(pts.size());
  const double c = std::cos(f.angle), s = std::sin(f.angle);
  for (const auto& w : pts) {
    const Point2 d = w - f.origin;
    out.push_back({c * d.x + s * d.y, -s * d.x + c * d.y});
  }
  return out;
}

// Liang-Barsky: parameter range of p + t (q - p), t in [0, 1], inside the box.
std::optional<std::pair<double, double>> clip(Point2 p, Point2 q, const BBox& box) {
  double t0 = 0.0, t1 = 1.0;
  const Point2 d = q - p;
  auto side = [&](double num, double den) {
    // den * t <= num
    if (den == 0.0) return num >= 0.0;
    const double t = num / den;
    if (den > 0.0) {
      t1 = std::min(t1, t);
    } else {
      t0 = std::max(t0, t);
    }
    return true;
  };
  if (!side(box.hi.x - p.x, d.x) || !side(p.x - box.lo.x, -d.x) || !side(box.hi.y - p.y, d.y) ||
      !side(p.y - box.lo.y, -d.y)) {
    return std::nullopt;
  }
  if (t0 > t1) return std::nullopt;
  return std::pair{t0, t1};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

BasicCheck is_basic_rectangle(const BasicRectangle& rect, const ClosedCurve& curve, std::size_t grid,
                              double min_angle_rad) {
  if (grid < 32) throw InvalidInput("is_basic_rectangle: grid must be at least 32");
  const double R = rect.R(), D = rect.D(), r = rect.r();
  const auto pts = to_local(rect.frame(), curve.vertices());
  const std::size_t n = pts.size();
  const std::size_t G = grid;
  const double step = 2.0 * R / static_cast<double>(G - 1);
  std::vector<double> xs(G);
  for (std::size_t k = 0; k < G; ++k) xs[k] = -R + step * static_cast<double>(k);
  xs[G - 1] = R;

  // (2) balls at the bottom and top grid points
  const BBox near{{-R - r, -r}, {R + r, D + r}};
  std::vector<std::size_t> close;
  for (std::size_t i = 0; i < n; ++i) {
    if (segment_bbox(pts[i], pts[(i + 1) % n]).overlaps(near)) close.push_back(i);
  }
  for (std::size_t k = 0; k < G; ++k) {
    for (const double y : {0.0, D}) {
      const Point2 c{xs[k], y};
      for (std::size_t i : close) {
        if (point_segment_distance2(c, pts[i], pts[(i + 1) % n]) <= r * r) {
          return {false, std::string(y == 0.0 ? "bottom" : "top") + " ball at x=" + fmt(xs[k]) + " meets the curve"};
        }
      }
    }
  }

  // (1) crossings of the segments (x1, 0) -> (x2, D). Within the strip
  // 0 <= y <= D the line through the endpoints is the segment itself, so an
  // edge piece clipped to the strip crosses it iff the side of the line
  // changes. The x range is padded so that crossings on the sides x = +-R
  // are not cut off.
  const BBox box{{-2.0 * R, 0.0}, {2.0 * R, D}};
  const double sin_min = std::sin(min_angle_rad);
  std::vector<std::uint32_t> count(G * G, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 p = pts[i], q = pts[(i + 1) % n];
    const auto range = clip(p, q, box);
    if (!range) continue;
    // unclipped ends stay bit-identical to the shared vertices
    const Point2 a = range->first == 0.0 ? p : p + range->first * (q - p);
    const Point2 b = range->second == 1.0 ? q : p + range->second * (q - p);
    if (a == b) continue;
    const Point2 e = q - p;
    const double elen = norm(e);
    // clipping can land a hair outside the strip
    const double ba = std::clamp(a.y / D, 0.0, 1.0), bb = std::clamp(b.y / D, 0.0, 1.0);
    if (ba == 0.0 && bb == 0.0) continue;
    for (std::size_t s = 0; s < G; ++s) {
      const double x1 = xs[s];
      // side function f(x2) = c - beta x2 at each end of the piece
      const double ca = a.x - (1.0 - ba) * x1;
      const double cb = b.x - (1.0 - bb) * x1;
      double lo, hi;
      if (ba > 0.0 && bb > 0.0) {
        const double ra = ca / ba, rb = cb / bb;
        lo = std::min(ra, rb);
        hi = std::max(ra, rb);
      } else {
        const double cfix = ba == 0.0 ? ca : cb;
        const double root = ba == 0.0 ? cb / bb : ca / ba;
        if (cfix == 0.0) continue;
        if (cfix > 0.0) {
          lo = root;
          hi = std::numeric_limits<double>::infinity();
        } else {
          lo = -std::numeric_limits<double>::infinity();
          hi = root;
        }
      }
      if (!(hi > -R) || !(lo <= R)) continue;
      std::size_t k = lo <= -R ? 0 : static_cast<std::size_t>(std::max(0.0, std::floor((lo + R) / step)));
      while (k < G && xs[k] < lo) ++k;
      for (; k < G && xs[k] < hi; ++k) {
        const Point2 d{xs[k] - x1, D};
        if (std::abs(cross(e, d)) < sin_min * elen * norm(d)) {
          return {false, "non-transversal crossing for x1=" + fmt(x1) + ", x2=" + fmt(xs[k])};
        }
        ++count[s * G + k];
      }
    }
  }
  for (std::size_t s = 0; s < G; ++s) {
    for (std::size_t k = 0; k < G; ++k) {
      const auto c = count[s * G + k];
      if (c != 1) {
        return {false, "segment x1=" + fmt(xs[s]) + ", x2=" + fmt(xs[k]) + " crosses the curve " +
                           std::to_string(c) + " times"};
      }
    }
  }
  return {true, {}};
}

const char* to_string(GraphSlice::Strand s) noexcept {
  switch (s) {
    case GraphSlice::Strand::single: return "single";
    case GraphSlice::Strand::upper: return "upper";
    case GraphSlice::Strand::lower: return "lower";
  }
  return "?";
}

std::vector<GraphSlice> extract_graph(const ClosedCurve& curve, const BasicRectangle& rect) {
  const double R = rect.R(), D = rect.D();
  const auto pts = to_local(rect.frame(), curve.vertices());
  const std::size_t n = pts.size();
  const BBox box{{-R, 0.0}, {R, D}};
  std::size_t start = n;
  for (std::size_t i = 0; i < n && start == n; ++i) {
    if (!box.contains(pts[i])) start = i;
  }
  if (start == n) throw InvalidInput("extract_graph: curve lies inside the rectangle");

  std::vector<std::vector<Point2>> chains;
  bool active = false;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = (start + k) % n;
    const Point2 p = pts[i], q = pts[(i + 1) % n];
    const auto range = clip(p, q, box);
    if (!range || range->first == range->second) {
      active = false;
      continue;
    }
    if (!active || range->first > 0.0) chains.push_back({p + range->first * (q - p)});
    chains.back().push_back(range->second == 1.0 ? q : p + range->second * (q - p));
    active = range->second == 1.0;
  }

  std::vector<GraphSlice> out;
  for (auto& ch : chains) {
    ch.erase(std::unique(ch.begin(), ch.end()), ch.end());
    if (ch.size() < 2) continue;
    const bool increasing = ch.back().x > ch.front().x;
    if (!increasing) std::reverse(ch.begin(), ch.end());
    GraphSlice s;
    for (std::size_t k = 0; k < ch.size(); ++k) {
      if (k > 0 && !(ch[k].x > ch[k - 1].x)) {
        throw DegenerateConfiguration("not graphical: strand turns back at x=" + fmt(ch[k].x));
      }
      s.xs.push_back(ch[k].x);
      s.gs.push_back(ch[k].y);
    }
    for (std::size_t k = 0; k + 1 < s.xs.size(); ++k) {
      if (s.xs[k + 1] < -R / 2.0 || s.xs[k] > R / 2.0) continue;
      s.slope_xs.push_back(0.5 * (s.xs[k] + s.xs[k + 1]));
      s.slopes.push_back((s.gs[k + 1] - s.gs[k]) / (s.xs[k + 1] - s.xs[k]));
    }
    out.push_back(std::move(s));
  }
  if (out.empty()) throw InvalidInput("extract_graph: curve does not meet the rectangle");
  if (out.size() > 2) {
    throw InvalidInput("extract_graph: " + std::to_string(out.size()) + " strands meet the rectangle");
  }
  if (out.size() == 2) {
    auto mean = [](const GraphSlice& s) {
      double m = 0.0;
      for (double g : s.gs) m += g;
      return m / static_cast<double>(s.gs.size());
    };
    if (mean(out[0]) < mean(out[1])) std::swap(out[0], out[1]);
    out[0].strand = GraphSlice::Strand::upper;
    out[1].strand = GraphSlice::Strand::lower;
  }
  return out;
}

BoundCheck check_gradient_bound(const GraphSlice& slice, const BasicRectangle& rect) {
  const double R = rect.R();
  if (slice.xs.empty() || slice.xs.front() > -R / 2.0 || slice.xs.back() < R / 2.0) {
    throw InvalidInput("check_gradient_bound: slice does not cover [-R/2, R/2]");
  }
  BoundCheck c;
  for (double s : slice.slopes) c.value = std::max(c.value, std::abs(s));
  c.bound = 1.05 * 2.0 * rect.D() / R;
  c.pass = c.value <= c.bound;
  return c;
}

BoundCheck check_height_bound(const GraphSlice& slice, const BasicRectangle& rect, double t) {
  const double r = rect.r(), D = rect.D();
  if (2.0 * t > r * r) throw InvalidInput("check_height_bound: beyond guaranteed window (2t > r^2)");
  if (slice.xs.empty()) throw InvalidInput("check_height_bound: empty slice");
  const double h = std::sqrt(r * r - 2.0 * t);
  double edge = 0.0;
  for (std::size_t k = 0; k + 1 < slice.xs.size(); ++k) {
    edge = std::max(edge, std::hypot(slice.xs[k + 1] - slice.xs[k], slice.gs[k + 1] - slice.gs[k]));
  }
  const double slack = 2.0 * edge;
  BoundCheck c;
  c.value = std::numeric_limits<double>::infinity();
  for (double g : slice.gs) c.value = std::min({c.value, g - (h - slack), (D - h + slack) - g});
  c.bound = h;
  c.pass = c.value > 0.0;
  return c;
}

double curvature_sup(const ClosedCurve& curve, const BasicRectangle& rect, int m) {
  if (m < 0 || m > 3) throw InvalidInput("curvature_sup: m must lie in 0..3");
  const BasicRectangle s = star(rect);
  const auto field = curvature_derivative(curve, m);
  std::size_t inside = 0;
  double sup = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (!s.contains(curve[i])) continue;
    ++inside;
    sup = std::max(sup, std::abs(field[i]));
  }
  if (inside < 16) {
    throw InvalidInput("curvature_sup: only " + std::to_string(inside) + " vertices inside star(rect), need 16");
  }
  return sup;
}

const char* to_string(CoverReport::Kind k) noexcept { return k == CoverReport::Kind::normal ? "normal" : "fan"; }

namespace {

constexpr double kBallMargin = 1.5;

struct Interval {
  double a, b;
};

// Covered parameter intervals per edge, merged on demand.
class Coverage {
 public:
  explicit Coverage(const ClosedCurve& c) : curve_(c), parts_(c.size()), len_(c.size()) {
    for (std::size_t i = 0; i < c.size(); ++i) len_[i] = distance(c[i], c[c.next(i)]);
  }

  // Parameter intervals of every edge inside the open F* of rect.
  std::vector<std::pair<std::size_t, Interval>> pieces(const BasicRectangle& rect) const {
    const BasicRectangle s = star(rect);
    const auto pts = to_local(s.frame(), curve_.vertices());
    const BBox box{{-s.R(), 0.0}, {s.R(), s.D()}};
    std::vector<std::pair<std::size_t, Interval>> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto range = clip(pts[i], pts[curve_.next(i)], box);
      if (range && range->second > range->first) out.push_back({i, {range->first, range->second}});
    }
    return out;
  }

  void add(const BasicRectangle& rect) {
    for (const auto& [i, iv] : pieces(rect)) {
      parts_[i].push_back(iv);
      merge(i);
    }
  }

  // New arclength rect would cover.
  double gain(const BasicRectangle& rect) const {
    double g = 0.0;
    for (const auto& [i, iv] : pieces(rect)) {
      double fresh = iv.b - iv.a;
      for (const auto& c : parts_[i]) fresh -= std::max(0.0, std::min(c.b, iv.b) - std::max(c.a, iv.a));
      g += std::max(0.0, fresh) * len_[i];
    }
    return g;
  }

  // First uncovered (edge, parameter) at or after edge `from`.
  std::optional<std::pair<std::size_t, double>> first_gap(std::size_t from) const {
    for (std::size_t i = from; i < parts_.size(); ++i) {
      double t = 0.0;
      for (const auto& c : parts_[i]) {
        if (c.a <= t) t = std::max(t, c.b);
      }
      if (t < 1.0) return std::pair{i, t};
    }
    return std::nullopt;
  }

  double fraction() const {
    double covered = 0.0, total = 0.0;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      total += len_[i];
      for (const auto& c : parts_[i]) covered += (c.b - c.a) * len_[i];
    }
    return total > 0.0 ? std::min(1.0, covered / total) : 0.0;
  }

 private:
  void merge(std::size_t i) {
    auto& v = parts_[i];
    std::sort(v.begin(), v.end(), [](const Interval& x, const Interval& y) { return x.a < y.a; });
    std::vector<Interval> m;
    for (const auto& c : v) {
      if (!m.empty() && c.a <= m.back().b) {
        m.back().b = std::max(m.back().b, c.b);
      } else {
        m.push_back(c);
      }
    }
    v = std::move(m);
  }

  const ClosedCurve& curve_;
  std::vector<std::vector<Interval>> parts_;
  std::vector<double> len_;
};

bool inside(Point2 p, std::span<const Point2> poly) {
  bool in = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = poly[i], b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) in = !in;
  }
  return in;
}

// Distance along the ray o + s d (s > 0) to the first edge other than the
// excluded ones.
double ray_hit(const ClosedCurve& c, Point2 o, Point2 d, std::size_t skip_a, std::size_t skip_b) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i == skip_a || i == skip_b) continue;
    const Point2 a = c[i], b = c[c.next(i)];
    const Point2 e = b - a;
    const double den = cross(d, e);
    if (den == 0.0) continue;
    const Point2 w = a - o;
    const double s = cross(w, e) / den;
    const double u = cross(w, d) / den;
    if (s > 0.0 && u >= 0.0 && u <= 1.0) best = std::min(best, s);
  }
  return best;
}

}  // namespace

double star_coverage(const ClosedCurve& curve, std::span<const BasicRectangle> rects) {
  Coverage cov(curve);
  for (const auto& r : rects) cov.add(r);
  return cov.fraction();
}

CoverReport build_cover(const ClosedCurve& curve, double r_min, std::size_t grid) {
  if (!(r_min > 0.0)) throw InvalidInput("build_cover: r_min must be positive");
  if (!is_embedded(curve)) throw InvalidInput("build_cover: curve is not embedded");
  const auto pts = curve.vertices();
  const std::size_t n = curve.size();
  const BBox bbox = curve.bbox();

  std::vector<double> arc(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) arc[i + 1] = arc[i] + distance(pts[i], pts[curve.next(i)]);

  // deepest point of a coarse interior lattice
  Point2 hub{};
  double hub_clear = 0.0;
  {
    const SegmentGrid sg(curve.view());
    constexpr int kLattice = 96;
    for (int a = 1; a < kLattice; ++a) {
      for (int b = 1; b < kLattice; ++b) {
        const Point2 p{bbox.lo.x + bbox.width() * a / kLattice, bbox.lo.y + bbox.height() * b / kLattice};
        if (!inside(p, pts)) continue;
        const double d = sg.nearest(p);
        if (d > hub_clear) {
          hub_clear = d;
          hub = p;
        }
      }
    }
  }

  // R is searched with balls of radius 1.5 r so the emitted rectangle keeps
  // clearance while the curve moves towards its sides.
  auto largest_R = [&](auto make, double R_hi) -> std::optional<BasicRectangle> {
    auto ok = [&](double R) {
      const BasicRectangle b = make(R);
      const BasicRectangle probe(b.frame(), R, b.D(), std::min(kBallMargin * b.r(), 0.49 * b.D()));
      return static_cast<bool>(is_basic_rectangle(probe, curve, grid));
    };
    double R = R_hi;
    int halvings = 0;
    while (!ok(R)) {
      R *= 0.5;
      if (++halvings > 16) return std::nullopt;
    }
    double lo = R, hi = std::min(2.0 * R, R_hi);
    if (lo < hi) {
      for (int it = 0; it < 5; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
      }
    }
    return make(lo);
  };

  Coverage cov(curve);
  CoverReport rep;
  std::size_t cursor = 0;
  while (auto gap = cov.first_gap(cursor)) {
    const auto [e, t] = *gap;
    cursor = e;
    const std::size_t f = curve.next(e);
    const Point2 p = pts[e] + t * (pts[f] - pts[e]);
    const double s = arc[e] + t * (arc[e + 1] - arc[e]);
    const Point2 tau = (pts[f] - pts[e]) / distance(pts[e], pts[f]);
    const Point2 nu = perp(tau);  // inward for a counter-clockwise curve
    const bool ccw = curve.orientation() == Orientation::ccw;

    std::optional<BasicRectangle> best;
    CoverReport::Kind kind = CoverReport::Kind::normal;
    double best_gain = 0.0;

    // normal frame centred on p
    {
      const std::size_t skip_b = t == 0.0 ? curve.prev(e) : (t == 1.0 ? f : e);
      const double h = std::min(ray_hit(curve, p, nu, e, skip_b), ray_hit(curve, p, -nu, e, skip_b));
      const double half = 0.5 * h;  // distance from p to the bottom and top sides
      const double r = std::min(2.0 * r_min, half / 2.0);
      if (std::isfinite(h) && r >= r_min) {
        const Point2 up = ccw ? nu : -nu;
        const RigidFrame fr{std::atan2(-up.x, up.y), p - half * up};
        auto make = [&](double R) { return BasicRectangle(fr, R, h, r); };
        if (auto rect = largest_R(make, h)) {
          best_gain = cov.gain(*rect);
          best = rect;
        }
      }
    }
    // fan rectangle from the hub through p
    if (hub_clear > 0.0 && distance(p, hub) > 0.0) {
      const double r = std::min(2.0 * r_min, hub_clear / 2.0);
      const double R_hi = 0.95 * (hub_clear - r);
      const Point2 u = (p - hub) / distance(p, hub);
      const BBox outer = bbox.inflated(1.01 * (r + R_hi));
      double D = std::numeric_limits<double>::infinity();
      if (u.x > 0.0) D = std::min(D, (outer.hi.x - hub.x) / u.x);
      if (u.x < 0.0) D = std::min(D, (outer.lo.x - hub.x) / u.x);
      if (u.y > 0.0) D = std::min(D, (outer.hi.y - hub.y) / u.y);
      if (u.y < 0.0) D = std::min(D, (outer.lo.y - hub.y) / u.y);
      if (r >= r_min && R_hi > 0.0 && D > 2.0 * r) {
        const RigidFrame fr{std::atan2(-u.x, u.y), hub};
        auto make = [&](double R) { return BasicRectangle(fr, R, D, r); };
        if (auto rect = largest_R(make, R_hi)) {
          const double g = cov.gain(*rect);
          if (!best || g > best_gain) {
            best = rect;
            best_gain = g;
            kind = CoverReport::Kind::fan;
          }
        }
      }
    }
    if (!best || best_gain <= 0.0) {
      throw DegenerateConfiguration("build_cover: no basic rectangle at arc position s=" + fmt(s), e);
    }
    if (rep.rectangles.size() >= 10000) throw DegenerateConfiguration("build_cover: too many rectangles", e);
    cov.add(*best);
    rep.rectangles.push_back(*best);
    rep.kinds.push_back(kind);
    rep.arc_positions.push_back(s);
  }
  rep.coverage_fraction = cov.fraction();
  double rmin2 = std::numeric_limits<double>::infinity();
  for (const auto& r : rep.rectangles) rmin2 = std::min(rmin2, r.r() * r.r());
  rep.tbar = rep.rectangles.empty() ? 0.0 : 0.5 * rmin2;
  return rep;
}

}  // namespace csf
