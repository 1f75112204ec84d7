#include "rbsect/geometry.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

#include "rbsect/counters.hpp"

namespace rbsect {

// ---------------------------------------------------------------------------
// ParabolaArc

Point ParabolaArc::normal() const {
  const Point n = perp(direction);
  return dot(focus - directrix_point, n) >= 0 ? n : -1.0 * n;
}

double ParabolaArc::focal_offset() const { return dot(focus - directrix_point, normal()); }

double ParabolaArc::focus_foot() const { return dot(focus - directrix_point, direction); }

QuadPath ParabolaArc::path() const {
  const Point n = normal();
  const double p = focal_offset();
  const double tf = focus_foot();
  QuadPath q;
  q.a = directrix_point + ((tf * tf + p * p) / (2 * p)) * n;
  q.b = direction - (tf / p) * n;
  q.c = (1 / (2 * p)) * n;
  q.t0 = t_lo;
  q.t1 = t_hi;
  return q;
}

// ---------------------------------------------------------------------------
// Curve

Curve Curve::line(Point a, Point b, CurveId id) {
  if (!std::isfinite(a.x) || !std::isfinite(a.y) || !std::isfinite(b.x) || !std::isfinite(b.y))
    throw ValidationError("line segment has non-finite coordinates");
  if (b.x < a.x) std::swap(a, b);
  if (b.x - a.x <= kEps)
    throw ValidationError("vertical line segment (" + std::to_string(a.x) + "," +
                          std::to_string(a.y) + ")-(" + std::to_string(b.x) + "," +
                          std::to_string(b.y) + ")");
  Curve c;
  c.kind_ = CurveKind::line;
  c.id_ = id;
  c.left_ = a;
  c.right_ = b;
  c.path_ = QuadPath{a, b - a, {0, 0}, 0, 1};
  c.normal_ = unit(perp(b - a));
  c.y_lo_ = std::min(a.y, b.y);
  c.y_hi_ = std::max(a.y, b.y);
  return c;
}

Curve Curve::parabola(const ParabolaArc& arc_in, CurveId id) {
  ParabolaArc arc = arc_in;
  const double len = norm(arc.direction);
  if (!(len > 0) || !std::isfinite(len)) throw ValidationError("parabola directrix has no direction");
  if (std::abs(len - 1) > 4e-16) arc.direction = (1 / len) * arc.direction;
  if (!(arc.t_lo < arc.t_hi)) throw ValidationError("parabola parameter range is empty");
  if (!(arc.focal_offset() > 1e-12)) throw ValidationError("parabola focus lies on its directrix");
  Curve c;
  c.kind_ = CurveKind::parabola;
  c.id_ = id;
  c.arc_ = arc;
  c.finish_parabola();
  return c;
}

void Curve::finish_parabola() {
  path_ = arc_.path();
  normal_ = arc_.normal();
  // A vanishing end tangent (a split at the vertical tangent) has no sign.
  auto sign_x = [](Point t) { return std::abs(t.x) <= 1e-12 * norm(t) ? 0 : (t.x > 0 ? 1 : -1); };
  if (sign_x(path_.tangent(path_.t0)) * sign_x(path_.tangent(path_.t1)) < 0)
    throw ValidationError("parabola arc is not x-monotone");
  Point p0 = path_.at(path_.t0), p1 = path_.at(path_.t1);
  if (p1.x < p0.x) std::swap(p0, p1);
  if (p1.x - p0.x <= kEps) throw ValidationError("parabola arc has no x-extent");
  left_ = p0;
  right_ = p1;
  y_lo_ = std::min(p0.y, p1.y);
  y_hi_ = std::max(p0.y, p1.y);
  if (path_.c.y != 0) {
    const double tv = -path_.b.y / (2 * path_.c.y);
    if (tv > path_.t0 && tv < path_.t1) {
      const double yv = path_.at(tv).y;
      y_lo_ = std::min(y_lo_, yv);
      y_hi_ = std::max(y_hi_, yv);
    }
  }
}

double Curve::param_at_x(double x) const {
  x = std::clamp(x, left_.x, right_.x);
  if (kind_ == CurveKind::line) {
    if (x == right_.x) return 1.0;
    return (x - left_.x) / (right_.x - left_.x);
  }
  const bool increasing = path_.at(path_.t1).x >= path_.at(path_.t0).x;
  if (x == left_.x) return increasing ? path_.t0 : path_.t1;
  if (x == right_.x) return increasing ? path_.t1 : path_.t0;
  const double A = path_.c.x, B = path_.b.x, C = path_.a.x - x;
  const double T = std::max({1.0, std::abs(path_.t0), std::abs(path_.t1)});
  double t;
  if (std::abs(A) * T <= 1e-14 * std::abs(B)) {
    t = -C / B;
  } else {
    const double disc = std::max(0.0, B * B - 4 * A * C);
    const double q = -0.5 * (B + std::copysign(std::sqrt(disc), B));
    const double r1 = q / A;
    const double r2 = q != 0 ? C / q : r1;
    auto gap = [&](double r) {
      return r < path_.t0 ? path_.t0 - r : (r > path_.t1 ? r - path_.t1 : 0.0);
    };
    t = gap(r1) <= gap(r2) ? r1 : r2;
    const double d = B + 2 * A * t;
    if (std::abs(d) > 1e-8 * (std::abs(B) + 2 * std::abs(A) * T)) t -= (C + t * (B + A * t)) / d;
  }
  return std::clamp(t, path_.t0, path_.t1);
}

double Curve::eval_y(double x) const {
  counters::bump(Op::eval_y);
  if (!(x >= left_.x - kEps && x <= right_.x + kEps))
    throw std::domain_error("eval_y: x=" + std::to_string(x) + " outside [" +
                            std::to_string(left_.x) + "," + std::to_string(right_.x) + "]");
  if (kind_ == CurveKind::line) {
    x = std::clamp(x, left_.x, right_.x);
    if (x == right_.x) return right_.y;
    const double t = (x - left_.x) / (right_.x - left_.x);
    return left_.y + t * (right_.y - left_.y);
  }
  return path_.at(param_at_x(x)).y;
}

Poly Curve::implicit_along(const QuadPath& q) const {
  if (kind_ == CurveKind::line) {
    return {dot(normal_, q.a - left_), dot(normal_, q.b), dot(normal_, q.c)};
  }
  const Point F = arc_.focus;
  const Point D = arc_.directrix_point;
  const Poly px{q.a.x - F.x, q.b.x, q.c.x};
  const Poly py{q.a.y - F.y, q.b.y, q.c.y};
  const Poly nd{dot(normal_, q.a - D), dot(normal_, q.b), dot(normal_, q.c)};
  return px * px + py * py - nd * nd;
}

double Curve::implicit_tol(Point at) const {
  if (kind_ == CurveKind::line) return kEps;
  const double df = dist(at, arc_.focus);
  const double dd = std::abs(dot(normal_, at - arc_.directrix_point));
  return kEps * (df + dd) + 1e-300;
}

bool Curve::on_arc(Point p, double tol) const {
  if (!spans_x(p.x, tol)) return false;
  if (kind_ == CurveKind::line) return true;
  const double t = dot(p - arc_.directrix_point, arc_.direction);
  return t >= arc_.t_lo - tol && t <= arc_.t_hi + tol;
}

bool Curve::same_geometry(const Curve& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == CurveKind::line) return left_ == o.left_ && right_ == o.right_;
  return arc_.focus == o.arc_.focus && arc_.directrix_point == o.arc_.directrix_point &&
         arc_.direction == o.arc_.direction && arc_.t_lo == o.arc_.t_lo && arc_.t_hi == o.arc_.t_hi;
}

// ---------------------------------------------------------------------------
// Intersection

namespace {

auto geometry_key(const Curve& c) {
  if (c.is_line())
    return std::make_tuple(0, c.left().x, c.left().y, c.right().x, c.right().y, 0.0, 0.0, 0.0, 0.0);
  const auto& a = c.parabola();
  return std::make_tuple(1, a.focus.x, a.focus.y, a.directrix_point.x, a.directrix_point.y,
                         a.direction.x, a.direction.y, a.t_lo, a.t_hi);
}

void push_sorted_unique(Intersections& out, Point p) {
  for (std::size_t i = 0; i < out.n; ++i)
    if (dist(out.p[i], p) <= kEps) return;
  if (out.n < out.p.size()) out.p[out.n++] = p;
  std::sort(out.p.begin(), out.p.begin() + static_cast<std::ptrdiff_t>(out.n),
            [](Point u, Point v) { return u.x < v.x || (u.x == v.x && u.y < v.y); });
}

// Shared pieces of coincident curves: the extreme endpoints lying on both.
Intersections overlap_extremes(const Curve& a, const Curve& b) {
  Intersections out;
  out.overlap = true;
  Point cand[4] = {a.left(), a.right(), b.left(), b.right()};
  bool have = false;
  Point lo{}, hi{};
  for (int i = 0; i < 4; ++i) {
    const Curve& other = i < 2 ? b : a;
    if (!other.on_arc(cand[i])) continue;
    if (!have || cand[i].x < lo.x) lo = cand[i];
    if (!have || cand[i].x > hi.x) hi = cand[i];
    have = true;
  }
  if (!have) return out;
  push_sorted_unique(out, lo);
  push_sorted_unique(out, hi);
  return out;
}

Intersections line_line(const Curve& a, const Curve& b) {
  Intersections out;
  const Point p = a.left(), r = a.right() - a.left();
  const Point q = b.left(), s = b.right() - b.left();
  const double denom = cross(r, s);
  const double rl = norm(r), sl = norm(s);
  if (std::abs(denom) <= 1e-14 * rl * sl) {
    if (std::abs(cross(r, q - p)) / rl > kEps) return out;
    return overlap_extremes(a, b);
  }
  const double t = cross(q - p, s) / denom;
  const double u = cross(q - p, r) / denom;
  if (t < -kEps / rl || t > 1 + kEps / rl || u < -kEps / sl || u > 1 + kEps / sl) return out;
  const Point x = p + std::clamp(t, 0.0, 1.0) * r;
  push_sorted_unique(out, x);
  return out;
}

}  // namespace

Intersections intersect(const Curve& a, const Curve& b) {
  counters::bump(Op::intersect);
  if (a.x_max() < b.x_min() - kEps || b.x_max() < a.x_min() - kEps) return {};
  if (a.y_max() < b.y_min() - kEps || b.y_max() < a.y_min() - kEps) return {};

  const bool a_first = geometry_key(a) <= geometry_key(b);
  const Curve& c1 = a_first ? a : b;
  const Curve& c2 = a_first ? b : a;
  if (c1.is_line() && c2.is_line()) return line_line(c1, c2);

  // Parametrise the line when there is one, otherwise the canonical first.
  const Curve& par = c1.is_line() ? c1 : (c2.is_line() ? c2 : c1);
  const Curve& imp = &par == &c1 ? c2 : c1;
  const QuadPath& path = par.path();
  const Poly f = imp.implicit_along(path);
  auto tol = [&](double t) { return imp.implicit_tol(path.at(t)); };

  const double tm = 0.5 * (path.t0 + path.t1);
  if (std::abs(f(path.t0)) <= tol(path.t0) && std::abs(f(tm)) <= tol(tm) &&
      std::abs(f(path.t1)) <= tol(path.t1)) {
    const double q1 = 0.75 * path.t0 + 0.25 * path.t1, q3 = 0.25 * path.t0 + 0.75 * path.t1;
    if (std::abs(f(q1)) <= tol(q1) && std::abs(f(q3)) <= tol(q3)) return overlap_extremes(c1, c2);
  }

  Intersections out;
  for (double t : real_roots(f, path.t0, path.t1, tol)) {
    const Point x = path.at(t);
    if (!imp.on_arc(x)) continue;
    push_sorted_unique(out, x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transforms

Curve mirror_x(const Curve& c) {
  if (c.is_line())
    return Curve::line({-c.right().x, c.right().y}, {-c.left().x, c.left().y}, c.id());
  ParabolaArc a = c.parabola();
  a.focus.x = -a.focus.x;
  a.directrix_point.x = -a.directrix_point.x;
  a.direction.x = -a.direction.x;
  return Curve::parabola(a, c.id());
}

std::vector<Curve> mirror_x(std::span<const Curve> cs) {
  std::vector<Curve> out;
  out.reserve(cs.size());
  for (const Curve& c : cs) out.push_back(mirror_x(c));
  return out;
}

Curve rotate(const Curve& c, double angle) {
  if (c.is_line()) return Curve::line(rotate(c.left(), angle), rotate(c.right(), angle), c.id());
  ParabolaArc a = c.parabola();
  a.focus = rotate(a.focus, angle);
  a.directrix_point = rotate(a.directrix_point, angle);
  a.direction = rotate(a.direction, angle);
  return Curve::parabola(a, c.id());
}

// ---------------------------------------------------------------------------
// Arcs and monotone splitting

QuadPath Arc::path() const {
  if (kind == CurveKind::line) return QuadPath{p, q - p, {0, 0}, 0, 1};
  ParabolaArc a = parabola;
  a.direction = unit(a.direction);
  return a.path();
}

Arc Arc::sub(double t0, double t1) const {
  Arc r = *this;
  if (kind == CurveKind::line) {
    const QuadPath qp = path();
    r.p = qp.at(t0);
    r.q = qp.at(t1);
  } else {
    r.parabola.t_lo = t0;
    r.parabola.t_hi = t1;
  }
  return r;
}

double Arc::length_estimate() const {
  if (kind == CurveKind::line) return dist(p, q);
  const QuadPath qp = path();
  double len = 0;
  Point prev = qp.at(qp.t0);
  for (int i = 1; i <= 32; ++i) {
    const Point cur = qp.at(qp.t0 + (qp.t1 - qp.t0) * i / 32);
    len += dist(prev, cur);
    prev = cur;
  }
  return len;
}

std::vector<Curve> split_x_monotone(const Arc& arc, CurveId id) {
  if (arc.kind == CurveKind::line) return {Curve::line(arc.p, arc.q, id)};
  ParabolaArc base = arc.parabola;
  base.direction = unit(base.direction);
  const QuadPath qp = base.path();
  std::vector<std::pair<double, double>> ranges;
  double split = std::numeric_limits<double>::quiet_NaN();
  if (qp.c.x != 0) split = -qp.b.x / (2 * qp.c.x);
  if (split > qp.t0 && split < qp.t1) {
    ranges = {{qp.t0, split}, {split, qp.t1}};
  } else {
    ranges = {{qp.t0, qp.t1}};
  }
  std::vector<Curve> out;
  for (auto [t0, t1] : ranges) {
    if (dist(qp.at(t0), qp.at(t1)) <= kEps && std::abs(t1 - t0) <= kEps) continue;
    ParabolaArc piece = base;
    piece.t_lo = t0;
    piece.t_hi = t1;
    out.push_back(Curve::parabola(piece, id));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sites and bisectors

Site Site::segment(Point a, Point b) {
  if (a == b) throw std::invalid_argument("segment site with coincident endpoints");
  return {SiteKind::segment, a, b};
}

double point_site_distance(Point p, const Site& s) {
  if (s.kind == SiteKind::point) return dist(p, s.a);
  const Point d = s.b - s.a;
  const double t = std::clamp(dot(p - s.a, d) / dot(d, d), 0.0, 1.0);
  return dist(p, s.a + t * d);
}

std::vector<std::pair<double, double>> feasible_intervals(std::span<const Poly> constraints,
                                                          double t0, double t1) {
  std::vector<double> brk{t0, t1};
  for (const Poly& g : constraints)
    for (double t : real_roots(g, t0, t1)) brk.push_back(t);
  std::sort(brk.begin(), brk.end());
  brk.erase(std::unique(brk.begin(), brk.end()), brk.end());
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
    const double m = 0.5 * (brk[i] + brk[i + 1]);
    bool ok = true;
    for (const Poly& g : constraints)
      if (g(m) < 0) {
        ok = false;
        break;
      }
    if (!ok) continue;
    if (!out.empty() && out.back().second == brk[i])
      out.back().second = brk[i + 1];
    else
      out.emplace_back(brk[i], brk[i + 1]);
  }
  return out;
}

namespace {

// Clip of the line m + s*w against linear constraints alpha*s + beta >= 0.
struct LineClip {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool empty = false;

  void require(double alpha, double beta) {
    if (std::abs(alpha) <= 1e-15) {
      if (beta < -kEps) empty = true;
      return;
    }
    const double s = -beta / alpha;
    if (alpha > 0)
      lo = std::max(lo, s);
    else
      hi = std::min(hi, s);
  }
};

std::vector<Arc> clipped_line(Point m, Point w, const Box& box, LineClip clip) {
  clip.require(w.x, m.x - box.x_lo);
  clip.require(-w.x, box.x_hi - m.x);
  clip.require(w.y, m.y - box.y_lo);
  clip.require(-w.y, box.y_hi - m.y);
  if (clip.empty || !(clip.hi - clip.lo > kEps)) return {};
  Arc a;
  a.kind = CurveKind::line;
  a.p = m + clip.lo * w;
  a.q = m + clip.hi * w;
  return {a};
}

std::vector<Arc> point_point(Point a, Point b, const Box& box) {
  return clipped_line(0.5 * (a + b), unit(perp(b - a)), box, {});
}

std::vector<Arc> point_segment(Point f, const Site& seg, const Box& box) {
  const Point u = unit(seg.b - seg.a);
  const double len = dist(seg.a, seg.b);
  const Point n = perp(u);
  if (std::abs(dot(f - seg.a, n)) <= kEps) {
    // Focus on the supporting line: only an own endpoint yields a bisector,
    // the normal line separating the endpoint region from the interior.
    if (dist(f, seg.a) <= kEps) return clipped_line(seg.a, n, box, {});
    if (dist(f, seg.b) <= kEps) return clipped_line(seg.b, n, box, {});
    return {};
  }
  Arc base;
  base.kind = CurveKind::parabola;
  base.parabola = ParabolaArc{f, seg.a, u, 0, len};
  const QuadPath qp = base.path();
  const Poly x = qp.x_poly(), y = qp.y_poly();
  const Poly cons[4] = {x - Poly(box.x_lo), Poly(box.x_hi) - x, y - Poly(box.y_lo),
                        Poly(box.y_hi) - y};
  std::vector<Arc> out;
  for (auto [t0, t1] : feasible_intervals(cons, 0, len))
    if (t1 - t0 > kEps) out.push_back(base.sub(t0, t1));
  return out;
}

std::vector<Arc> segment_segment(const Site& s1, const Site& s2, const Box& box) {
  const Point u1 = unit(s1.b - s1.a), u2 = unit(s2.b - s2.a);
  const double l1 = dist(s1.a, s1.b), l2 = dist(s2.a, s2.b);
  std::vector<std::pair<Point, Point>> lines;
  const double c = cross(u1, u2);
  if (std::abs(c) <= 1e-12) {
    const Point n1 = perp(u1);
    const double off = dot(s2.a - s1.a, n1);
    if (std::abs(off) <= kEps) return {};
    lines.emplace_back(s1.a + (off / 2) * n1, u1);
  } else {
    const Point x0 = s1.a + (cross(s2.a - s1.a, u2) / c) * u1;
    lines.emplace_back(x0, unit(u1 + u2));
    lines.emplace_back(x0, unit(u1 - u2));
  }
  std::vector<Arc> out;
  for (auto [m, w] : lines) {
    LineClip clip;
    // 0 <= u_i . (m + s w - a_i) <= l_i
    clip.require(dot(u1, w), dot(u1, m - s1.a));
    clip.require(-dot(u1, w), l1 - dot(u1, m - s1.a));
    clip.require(dot(u2, w), dot(u2, m - s2.a));
    clip.require(-dot(u2, w), l2 - dot(u2, m - s2.a));
    for (Arc& a : clipped_line(m, w, box, clip)) out.push_back(a);
  }
  return out;
}

}  // namespace

std::vector<Arc> bisector(const Site& s1, const Site& s2, const Box& box) {
  if (s1 == s2) throw std::invalid_argument("bisector of identical sites");
  if (s1.kind == SiteKind::point && s2.kind == SiteKind::point) return point_point(s1.a, s2.a, box);
  if (s1.kind == SiteKind::point) return point_segment(s1.a, s2, box);
  if (s2.kind == SiteKind::point) return point_segment(s2.a, s1, box);
  return segment_segment(s1, s2, box);
}

std::vector<Arc> bisector(const Site& s1, const Site& s2) {
  double xl = std::min({s1.a.x, s1.b.x, s2.a.x, s2.b.x});
  double xh = std::max({s1.a.x, s1.b.x, s2.a.x, s2.b.x});
  double yl = std::min({s1.a.y, s1.b.y, s2.a.y, s2.b.y});
  double yh = std::max({s1.a.y, s1.b.y, s2.a.y, s2.b.y});
  const double ext = std::max({xh - xl, yh - yl, 1.0});
  return bisector(s1, s2, Box{xl - ext, yl - ext, xh + ext, yh + ext});
}

}  // namespace rbsect
