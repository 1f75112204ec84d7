#include "rbsect/hausdorff.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "rbsect/first_last.hpp"
#include "rbsect/instance.hpp"
#include "rbsect/oracle.hpp"
#include "rbsect/parallel.hpp"

namespace rbsect {
namespace {

// A critical point replaces an endpoint witness only when it is larger by
// more than rounding, so constant-distance instances report an endpoint.
constexpr double kTieRel = 1e-12;

bool inside(const Box& b, Point p) { return p.x >= b.x_lo && p.x <= b.x_hi && p.y >= b.y_lo && p.y <= b.y_hi; }

struct Candidate {
  double value = -1;
  Point at;
  WitnessKind kind = WitnessKind::endpoint;
};

}  // namespace

std::string_view direction_name(Direction d) {
  switch (d) {
    case Direction::p_to_q:
      return "P->Q";
    case Direction::q_to_p:
      return "Q->P";
    case Direction::both:
      return "both";
  }
  return "?";
}

std::string_view witness_kind_name(WitnessKind k) {
  return k == WitnessKind::endpoint ? "endpoint" : "critical";
}

std::vector<CriticalPoint> critical_points(std::span<const Segment> P, const VoronoiDiagram& d) {
  std::vector<Curve> red, blue;
  red.reserve(d.edges.size());
  for (std::size_t e = 0; e < d.edges.size(); ++e)
    red.push_back(d.edges[e].curve.with_id(static_cast<CurveId>(e)));
  blue.reserve(P.size());
  for (std::size_t k = 0; k < P.size(); ++k) blue.push_back(Curve::line(P[k].a, P[k].b, static_cast<CurveId>(k)));

  const FirstLastResult fl = first_last(red, blue);
  std::vector<CriticalPoint> out;
  for (std::uint32_t e = 0; e < fl.size(); ++e) {
    if (fl[e].first) out.push_back({e, fl[e].first->blue, fl[e].first->point, false});
    if (fl[e].last) out.push_back({e, fl[e].last->blue, fl[e].last->point, true});
  }
  return out;
}

HausdorffResult directed_hausdorff(std::span<const Segment> P, std::span<const Segment> Q,
                                   const HausdorffOptions& opts) {
  if (P.empty() || Q.empty()) throw std::invalid_argument("Hausdorff distance of an empty segment set");
  const VoronoiDiagram d = voronoi_edges(Q, P, opts.voronoi);

  std::vector<Segment> p_frame;
  p_frame.reserve(P.size());
  for (const Segment& s : P) {
    p_frame.push_back(to_frame(d, s));
    if (!inside(d.box, p_frame.back().a) || !inside(d.box, p_frame.back().b))
      throw ValidationError("P leaves the Voronoi clipping box");
  }

  HausdorffResult r;
  r.voronoi_edges = d.edges.size();
  if (opts.trace) opts.trace->diagram = d;

  // Endpoints, with each reported in its original coordinates.
  std::vector<Candidate> ends(2 * P.size());
  parallel::parallel_for(ends.size(), [&](std::size_t k) {
    const Segment& s = p_frame[k / 2];
    const Point p = k % 2 ? s.b : s.a;
    ends[k] = {brute_nearest(p, d.sites).distance, k % 2 ? P[k / 2].b : P[k / 2].a, WitnessKind::endpoint};
  });
  r.endpoints = ends.size();

  const std::vector<CriticalPoint> cps = critical_points(p_frame, d);
  r.critical_points = cps.size();
  std::vector<Candidate> crit(cps.size());
  std::vector<char> mismatch(cps.size(), 0);
  parallel::parallel_for(cps.size(), [&](std::size_t k) {
    const CriticalPoint& c = cps[k];
    const double v = point_site_distance(c.point, d.sites[d.edges[c.edge].s1]);
    crit[k] = {v, d.from_frame(c.point), WitnessKind::critical_point};
    if (opts.check_sites) mismatch[k] = v > brute_nearest(c.point, d.sites).distance + 1e-9;
  });
  for (char m : mismatch) r.site_mismatches += m;
  if (opts.trace) {
    opts.trace->critical.clear();
    for (const Candidate& c : crit) opts.trace->critical.push_back(c.at);
  }

  // Sequential reduction in candidate order, so ties resolve the same way
  // for every worker count.
  Candidate best;
  for (const Candidate& c : ends)
    if (c.value > best.value) best = c;
  for (const Candidate& c : crit)
    if (c.value > best.value + kTieRel * std::max(1.0, best.value)) best = c;
  r.value = best.value;
  r.witness = best.at;
  r.witness_kind = best.kind;
  return r;
}

HausdorffResult hausdorff(std::span<const Segment> P, std::span<const Segment> Q, const HausdorffOptions& opts) {
  HausdorffTrace tp, tq;
  HausdorffOptions o = opts;
  o.trace = opts.trace ? &tp : nullptr;
  const HausdorffResult pq = directed_hausdorff(P, Q, o);
  o.trace = opts.trace ? &tq : nullptr;
  HausdorffResult qp = directed_hausdorff(Q, P, o);
  qp.direction = Direction::q_to_p;
  const double tie = kTieRel * std::max(1.0, pq.value);
  const bool q_wins = qp.value > pq.value + tie;
  HausdorffResult r = q_wins ? qp : pq;
  if (opts.trace) *opts.trace = std::move(q_wins ? tq : tp);
  if (std::abs(qp.value - pq.value) <= tie) r.direction = Direction::both;
  r.endpoints = pq.endpoints + qp.endpoints;
  r.critical_points = pq.critical_points + qp.critical_points;
  r.voronoi_edges = pq.voronoi_edges + qp.voronoi_edges;
  r.site_mismatches = pq.site_mismatches + qp.site_mismatches;
  return r;
}

void print_hausdorff(std::ostream& out, const HausdorffResult& r) {
  out << "# value\twitness_x\twitness_y\tdirection\twitness_kind\tendpoints\tcritical_points\tvoronoi_edges\n"
      << format_double(r.value) << '\t' << format_double(r.witness.x) << '\t' << format_double(r.witness.y) << '\t'
      << direction_name(r.direction) << '\t' << witness_kind_name(r.witness_kind) << '\t' << r.endpoints << '\t'
      << r.critical_points << '\t' << r.voronoi_edges << '\n';
}

}  // namespace rbsect
