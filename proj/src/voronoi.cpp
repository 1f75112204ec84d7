#include "rbsect/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "rbsect/parallel.hpp"

namespace rbsect {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// |dx| below this fraction of the length counts as vertical.
constexpr double kVerticalTol = 1e-6;

struct NeedsRotation {};

bool near_vertical(Point a, Point b) { return std::abs(a.x - b.x) <= kVerticalTol * dist(a, b); }

Poly sq_dist_along(const QuadPath& q, const Site& s) {
  const Poly x = q.x_poly(), y = q.y_poly();
  if (s.kind == SiteKind::point) {
    const Poly dx = x - Poly(s.a.x), dy = y - Poly(s.a.y);
    return dx * dx + dy * dy;
  }
  const Point n = unit(perp(s.b - s.a));
  const Poly h = n.x * (x - Poly(s.a.x)) + n.y * (y - Poly(s.a.y));
  return h * h;
}

// Position of the foot along a segment site.
Poly foot_along(const QuadPath& q, const Site& s) {
  const Point u = unit(s.b - s.a);
  return u.x * (q.x_poly() - Poly(s.a.x)) + u.y * (q.y_poly() - Poly(s.a.y));
}

struct Span {
  double t0, t1;
};

// Exact bounding disk of the path over [t0, t1].
std::pair<Point, double> bounding_disk(const QuadPath& q, double t0, double t1) {
  double xl = kInf, xh = -kInf, yl = kInf, yh = -kInf;
  auto take = [&](double t) {
    const Point p = q.at(t);
    xl = std::min(xl, p.x);
    xh = std::max(xh, p.x);
    yl = std::min(yl, p.y);
    yh = std::max(yh, p.y);
  };
  take(t0);
  take(t1);
  if (q.c.x != 0) {
    const double t = -q.b.x / (2 * q.c.x);
    if (t > t0 && t < t1) take(t);
  }
  if (q.c.y != 0) {
    const double t = -q.b.y / (2 * q.c.y);
    if (t > t0 && t < t1) take(t);
  }
  const Point c{0.5 * (xl + xh), 0.5 * (yl + yh)};
  return {c, 0.5 * std::hypot(xh - xl, yh - yl)};
}

// Squared elementary distance, infinite when a segment's foot is off it.
double sq_elementary_distance(Point p, const Site& s) {
  if (s.kind == SiteKind::point) return dot(p - s.a, p - s.a);
  const Point d = s.b - s.a;
  const double dd = dot(d, d);
  const double t = dot(p - s.a, d) / dd;
  if (t < -1e-12 || t > 1 + 1e-12) return kInf;
  const double c = cross(d, p - s.a);
  return c * c / dd;
}

// Uniform grid over site bounding boxes for nearest and range queries.
class SiteGrid {
 public:
  explicit SiteGrid(std::span<const Site> sites) : sites_(sites) {
    lo_ = {kInf, kInf};
    Point hi{-kInf, -kInf};
    for (const Site& s : sites)
      for (Point p : {s.a, s.b}) {
        lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
      }
    const double w = std::max({hi.x - lo_.x, hi.y - lo_.y, 1e-9});
    g_ = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(sites.size()) / 2)));
    cell_ = w / g_ * (1 + 1e-12);
    cells_.resize(static_cast<std::size_t>(g_) * g_);
    for (std::uint32_t k = 0; k < sites.size(); ++k) {
      const Site& s = sites[k];
      const int x0 = col(std::min(s.a.x, s.b.x)), x1 = col(std::max(s.a.x, s.b.x));
      const int y0 = row(std::min(s.a.y, s.b.y)), y1 = row(std::max(s.a.y, s.b.y));
      for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) cells_[static_cast<std::size_t>(y) * g_ + x].push_back(k);
    }
  }

  // Calls f(k) at least once for every site whose bounding box meets the
  // square of half-width r around p (sites may repeat).
  template <class F>
  void near_square(Point p, double r, F&& f) const {
    const int x0 = col(p.x - r), x1 = col(p.x + r), y0 = row(p.y - r), y1 = row(p.y + r);
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x)
        for (std::uint32_t k : cells_[static_cast<std::size_t>(y) * g_ + x]) f(k);
  }

  // Site minimising (squared elementary distance, index) among those below
  // `bound` for which keep(k) holds; returns `none` if there is none.
  template <class Keep>
  std::uint32_t nearest(Point p, double bound, std::uint32_t none, Keep&& keep) const {
    std::uint32_t best = none;
    double bd = bound;
    const int cx = col(p.x), cy = row(p.y);
    for (int ring = 0; ring < g_; ++ring) {
      const double lb = (ring - 1) * cell_;
      if (lb > 0 && lb * lb >= bd) break;
      for (int y = cy - ring; y <= cy + ring; ++y) {
        if (y < 0 || y >= g_) continue;
        const bool edge_row = y == cy - ring || y == cy + ring;
        for (int x = cx - ring; x <= cx + ring; x += edge_row ? 1 : 2 * std::max(ring, 1)) {
          if (x < 0 || x >= g_) continue;
          for (std::uint32_t k : cells_[static_cast<std::size_t>(y) * g_ + x]) {
            if (!keep(k)) continue;
            const double d = sq_elementary_distance(p, sites_[k]);
            if (d < bd || (d == bd && best != none && k < best)) {
              bd = d;
              best = k;
            }
          }
        }
      }
    }
    return best;
  }

 private:
  int col(double x) const { return std::clamp(static_cast<int>(std::floor((x - lo_.x) / cell_)), 0, g_ - 1); }
  int row(double y) const { return std::clamp(static_cast<int>(std::floor((y - lo_.y) / cell_)), 0, g_ - 1); }

  std::span<const Site> sites_;
  Point lo_;
  double cell_ = 1;
  int g_ = 1;
  std::vector<std::vector<std::uint32_t>> cells_;
};

bool is_endpoint(const Site& p, const Site& seg) {
  return p.kind == SiteKind::point && seg.kind == SiteKind::segment && (p.a == seg.a || p.a == seg.b);
}

class PairClipper {
 public:
  PairClipper(std::span<const Site> sites, const SiteGrid& grid, std::uint32_t i, std::uint32_t j, double tol)
      : sites_(sites), grid_(grid), i_(i), j_(j), tol_(tol), applied_(sites.size(), 0) {}

  // Parameter spans of the arc on which sites i and j are jointly nearest.
  std::vector<Span> run(const Arc& arc) {
    q_ = arc.path();
    d1_ = sq_dist_along(q_, sites_[i_]);
    std::fill(applied_.begin(), applied_.end(), 0);
    alive_ = {{q_.t0, q_.t1}};
    const auto skip = [&](std::uint32_t k) { return k != i_ && k != j_ && !applied_[k]; };
    // Cheap rounds: apply the nearest site at each span midpoint.
    for (int round = 0; round < 8 && !alive_.empty(); ++round) {
      bool progress = false;
      const auto spans = alive_;
      for (const Span& s : spans) {
        const double tm = 0.5 * (s.t0 + s.t1);
        const double d1 = std::sqrt(std::max(0.0, d1_(tm))) - std::sqrt(tol_);
        if (d1 <= 0) continue;
        const std::uint32_t best = grid_.nearest(q_.at(tm), d1 * d1, i_, skip);
        if (best != i_) {
          apply(best);
          progress = true;
          if (alive_.empty()) break;
        }
      }
      if (!progress) break;
    }
    // Full check against every site that can come closer on a span.
    // Spans only shrink, so candidates taken from the current ones suffice.
    std::vector<std::uint32_t> near;
    for (const Span& s : alive_) {
      const auto [c, rho] = bounding_disk(q_, s.t0, s.t1);
      const double reach = point_site_distance(c, sites_[i_]) + 2 * rho + 1e-9;
      grid_.near_square(c, reach, [&](std::uint32_t k) {
        if (skip(k) && point_site_distance(c, sites_[k]) < reach) near.push_back(k);
      });
    }
    std::sort(near.begin(), near.end());
    near.erase(std::unique(near.begin(), near.end()), near.end());
    for (std::uint32_t k : near) {
      if (alive_.empty()) break;
      apply(k);
    }
    return alive_;
  }

 private:
  // Removes the parts of every alive span where site k is strictly closer,
  // or ties with it when k would make the pair lexicographically smaller.
  // A segment and its own endpoint meet tangentially along the endpoint
  // normal, so that relation is decided by the foot alone.
  void apply(std::uint32_t k) {
    applied_[k] = 1;
    const Site& s3 = sites_[k];
    if (s3.kind == SiteKind::point && (is_endpoint(s3, sites_[i_]) || is_endpoint(s3, sites_[j_]))) return;
    const bool own = s3.kind == SiteKind::segment &&
                     (is_endpoint(sites_[i_], s3) || is_endpoint(sites_[j_], s3));
    const Poly g = sq_dist_along(q_, s3) - d1_;
    Poly f, f2;
    double len = 0;
    const bool seg = s3.kind == SiteKind::segment;
    if (seg) {
      f = foot_along(q_, s3);
      len = dist(s3.a, s3.b);
      f2 = f - Poly(len);
    }
    std::vector<Span> next;
    std::vector<double> brk;
    for (const Span& s : alive_) {
      brk.assign({s.t0, s.t1});
      if (!own)
        for (double t : real_roots(g, s.t0, s.t1)) brk.push_back(t);
      if (seg) {
        for (double t : real_roots(f, s.t0, s.t1)) brk.push_back(t);
        for (double t : real_roots(f2, s.t0, s.t1)) brk.push_back(t);
      }
      std::sort(brk.begin(), brk.end());
      brk.erase(std::unique(brk.begin(), brk.end()), brk.end());
      for (std::size_t b = 0; b + 1 < brk.size(); ++b) {
        const double m = 0.5 * (brk[b] + brk[b + 1]);
        bool bad = false;
        if (own) {
          bad = f(m) > 0 && f(m) < len;
        } else if (!seg || (f(m) >= 0 && f(m) <= len)) {
          const double gm = g(m);
          bad = gm < -tol_ || (gm <= tol_ && k < j_);
        }
        if (bad) continue;
        if (!next.empty() && next.back().t1 == brk[b])
          next.back().t1 = brk[b + 1];
        else
          next.push_back({brk[b], brk[b + 1]});
      }
    }
    alive_ = std::move(next);
  }

  std::span<const Site> sites_;
  const SiteGrid& grid_;
  std::uint32_t i_, j_;
  double tol_;
  std::vector<char> applied_;
  QuadPath q_;
  Poly d1_;
  std::vector<Span> alive_;
};

Box extent(std::span<const Segment> a, std::span<const Segment> b) {
  Box e{kInf, kInf, -kInf, -kInf};
  for (auto set : {a, b})
    for (const Segment& s : set)
      for (Point p : {s.a, s.b}) {
        e.x_lo = std::min(e.x_lo, p.x);
        e.y_lo = std::min(e.y_lo, p.y);
        e.x_hi = std::max(e.x_hi, p.x);
        e.y_hi = std::max(e.y_hi, p.y);
      }
  const double w = std::max({e.x_hi - e.x_lo, e.y_hi - e.y_lo, 1.0});
  return {e.x_lo - w, e.y_lo - w, e.x_hi + w, e.y_hi + w};
}

VoronoiDiagram build_in_frame(std::span<const Segment> Q, std::span<const Segment> also, double angle) {
  VoronoiDiagram d;
  d.angle = angle;
  std::vector<Segment> q(Q.begin(), Q.end()), extra(also.begin(), also.end());
  for (auto* set : {&q, &extra})
    for (Segment& s : *set) {
      s = {rotate(s.a, angle), rotate(s.b, angle)};
      if (near_vertical(s.a, s.b)) throw NeedsRotation{};
    }
  d.box = extent(q, extra);
  d.sites = elementary_sites(q, &d.site_segment);
  const double scale = std::max(d.box.x_hi - d.box.x_lo, d.box.y_hi - d.box.y_lo);
  const double tol = 1e-12 * scale * scale;

  const SiteGrid grid(d.sites);
  const auto m = static_cast<std::uint32_t>(d.sites.size());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);

  std::vector<char> flags(pairs.size(), 0);
  d.edges = parallel::parallel_collect<VoronoiEdge>(
      pairs.size(),
      [&](std::size_t p, std::vector<VoronoiEdge>& out) {
        const auto [i, j] = pairs[p];
        PairClipper clip(d.sites, grid, i, j, tol);
        for (const Arc& arc : bisector(d.sites[i], d.sites[j], d.box)) {
          for (const Span& s : clip.run(arc)) {
            const Arc piece = arc.sub(s.t0, s.t1);
            if (piece.length_estimate() <= kEps) continue;
            if (piece.kind == CurveKind::line && near_vertical(piece.p, piece.q)) {
              flags[p] = 1;
              continue;
            }
            try {
              for (Curve& c : split_x_monotone(piece)) out.push_back({std::move(c), i, j});
            } catch (const ValidationError&) {
              flags[p] = 1;
            }
          }
        }
      },
      64);
  if (std::find(flags.begin(), flags.end(), 1) != flags.end()) throw NeedsRotation{};
  return d;
}

}  // namespace

std::vector<Site> elementary_sites(std::span<const Segment> segs, std::vector<std::uint32_t>* owner) {
  std::vector<Site> out;
  std::map<std::pair<double, double>, std::uint32_t> seen;
  if (owner) owner->clear();
  for (std::uint32_t k = 0; k < segs.size(); ++k) {
    for (Point p : {segs[k].a, segs[k].b})
      if (seen.emplace(std::pair(p.x, p.y), static_cast<std::uint32_t>(out.size())).second) {
        out.push_back(Site::point(p));
        if (owner) owner->push_back(k);
      }
    out.push_back(Site::segment(segs[k].a, segs[k].b));
    if (owner) owner->push_back(k);
  }
  return out;
}

double elementary_distance(Point p, const Site& s) {
  if (s.kind == SiteKind::point) return dist(p, s.a);
  const Point d = s.b - s.a;
  const double t = dot(p - s.a, d) / dot(d, d);
  if (t < -1e-12 || t > 1 + 1e-12) return kInf;
  return std::abs(cross(d, p - s.a)) / norm(d);
}

VoronoiDiagram voronoi_edges(std::span<const Segment> Q, std::span<const Segment> also,
                             const VoronoiOptions& opts) {
  if (Q.empty()) throw std::invalid_argument("Voronoi diagram of an empty segment set");
  for (int k = 0; k <= opts.max_rotations; ++k) {
    try {
      return build_in_frame(Q, also, k * opts.rotation_step);
    } catch (const NeedsRotation&) {
    }
  }
  throw ValidationError("no rotation avoids vertical Voronoi edges");
}

Segment to_frame(const VoronoiDiagram& d, const Segment& s) { return {d.to_frame(s.a), d.to_frame(s.b)}; }

}  // namespace rbsect
