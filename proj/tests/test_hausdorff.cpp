#include <cmath>
#include <sstream>

#include "doctest.h"
#include "rbsect/generator.hpp"
#include "rbsect/hausdorff.hpp"
#include "rbsect/oracle.hpp"
#include "rbsect/parallel.hpp"

using namespace rbsect;

namespace {

HausdorffOptions checked() {
  HausdorffOptions o;
  o.check_sites = true;
  return o;
}

}  // namespace

TEST_CASE("directed Hausdorff examples") {
  const std::vector<Segment> P{{{0, 0}, {10, 0}}};
  const std::vector<Segment> Q1{{{0, 3}, {10, 3}}};
  const std::vector<Segment> Q2{{{0, 3}, {4, 3}}};

  const HausdorffResult same = directed_hausdorff(P, P, checked());
  CHECK(same.value <= 1e-12);

  const HausdorffResult flat = directed_hausdorff(P, Q1, checked());
  CHECK(flat.value == doctest::Approx(3).epsilon(1e-12));
  CHECK(flat.witness_kind == WitnessKind::endpoint);
  CHECK(flat.witness == Point{0, 0});

  const HausdorffResult r = directed_hausdorff(P, Q2, checked());
  CHECK(std::abs(r.value - std::sqrt(45.0)) <= 1e-9);
  CHECK(r.witness == Point{10, 0});
  CHECK(r.direction == Direction::p_to_q);
  CHECK(r.site_mismatches == 0);

  CHECK_THROWS_AS(directed_hausdorff({}, Q1), std::invalid_argument);
  CHECK_THROWS_AS(directed_hausdorff(P, {}), std::invalid_argument);
}

TEST_CASE("undirected Hausdorff examples") {
  const std::vector<Segment> P{{{0, 0}, {10, 0}}};
  const std::vector<Segment> Q2{{{0, 3}, {4, 3}}};
  const HausdorffResult r = hausdorff(P, Q2, checked());
  CHECK(std::abs(r.value - std::sqrt(45.0)) <= 1e-9);
  CHECK(r.direction == Direction::p_to_q);
  const HausdorffResult back = hausdorff(Q2, P, checked());
  CHECK(back.value == doctest::Approx(r.value).epsilon(1e-12));
  CHECK(back.direction == Direction::q_to_p);

  // mirror images of each other across y = 1.5
  const std::vector<Segment> A{{{0, 0}, {6, 1}}}, B{{{0, 3}, {6, 2}}};
  CHECK(hausdorff(A, B, checked()).direction == Direction::both);

  // a piece of Q: d_H(P, Q) is zero, the rest comes from Q
  const std::vector<Segment> part{{{1, 3}, {3, 3}}};
  CHECK(directed_hausdorff(part, Q2, checked()).value <= 1e-12);
  const HausdorffResult c = hausdorff(part, Q2, checked());
  CHECK(c.direction == Direction::q_to_p);
  CHECK(c.value == doctest::Approx(1).epsilon(1e-12));
}

TEST_CASE("critical points lie on both curves and match the oracle extremes") {
  SUBCASE("a segment crossing one straight edge once") {
    // Q's two endpoints: one straight edge between their regions... use two
    // point-like segments far apart so the middle bisector is a line
    const std::vector<Segment> Q{{{0, 0}, {1, 0.5}}, {{8, 0}, {9, 0.5}}};
    const VoronoiDiagram d = voronoi_edges(Q);
    const std::vector<Segment> P{to_frame(d, Segment{{4, -1}, {5, 2}})};
    const auto cps = critical_points(P, d);
    REQUIRE(!cps.empty());
    for (std::size_t k = 0; k + 1 < cps.size(); k += 2) {
      CHECK(cps[k].edge == cps[k + 1].edge);
      CHECK(cps[k].point == cps[k + 1].point);
    }
  }
  SUBCASE("disjoint from every edge") {
    const std::vector<Segment> Q{{{0, 0}, {10, 0.5}}};
    const VoronoiDiagram d = voronoi_edges(Q);
    const std::vector<Segment> P{to_frame(d, Segment{{2, 1}, {7, 2}})};
    CHECK(critical_points(P, d).empty());
  }
  SUBCASE("random") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const auto sets = generate_segments(20, seed);
      const VoronoiDiagram d = voronoi_edges(sets.q, sets.p);
      std::vector<Segment> P;
      for (const Segment& s : sets.p) P.push_back(to_frame(d, s));
      const auto cps = critical_points(P, d);
      std::vector<Curve> red, blue;
      for (const VoronoiEdge& e : d.edges) red.push_back(e.curve);
      for (const Segment& s : P) blue.push_back(Curve::line(s.a, s.b));
      const auto want = brute_first_last(red, blue);
      std::size_t k = 0;
      for (std::uint32_t e = 0; e < want.size(); ++e) {
        INFO("seed=", seed, " edge=", e);
        for (const auto& w : {want[e].first, want[e].last}) {
          if (!w) continue;
          REQUIRE(k < cps.size());
          CHECK(cps[k].edge == e);
          CHECK(dist(cps[k].point, w->point) <= 1e-9);
          const Segment& s = P[cps[k].segment];
          CHECK(std::abs(cross(s.b - s.a, cps[k].point - s.a)) / dist(s.a, s.b) <= 1e-7);
          const Curve& c = d.edges[e].curve;
          CHECK(std::abs(c.eval_y(cps[k].point.x) - cps[k].point.y) <= 1e-7);
          ++k;
        }
      }
      CHECK(k == cps.size());
    }
  }
}

TEST_CASE("exact value is sandwiched by the sampled oracle") {
  const double delta = 1e-3;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto sets = generate_segments(5 + 6 * seed, seed);
    INFO("seed=", seed);
    for (int dir = 0; dir < 2; ++dir) {
      const auto& P = dir ? sets.q : sets.p;
      const auto& Q = dir ? sets.p : sets.q;
      const HausdorffResult r = directed_hausdorff(P, Q, checked());
      const double s = sampled_directed_hausdorff(P, Q, delta);
      CHECK(s <= r.value + 1e-12);
      CHECK(r.value <= s + delta / 2);
      CHECK(std::abs(distance_to_segments(r.witness, Q) - r.value) <= 1e-9);
      CHECK(r.site_mismatches == 0);
    }
  }
}

TEST_CASE("result does not depend on the worker count") {
  const auto sets = generate_segments(25, 3);
  std::string base;
  for (int k : {1, 2, 8}) {
    parallel::ThreadScope scope(k);
    std::ostringstream s;
    print_hausdorff(s, hausdorff(sets.p, sets.q));
    if (base.empty()) base = s.str();
    CHECK(s.str() == base);
  }
}

TEST_CASE("record format") {
  HausdorffResult r;
  r.value = 2.5;
  r.witness = {1, -0.5};
  r.witness_kind = WitnessKind::critical_point;
  r.endpoints = 4;
  r.critical_points = 3;
  r.voronoi_edges = 9;
  std::ostringstream s;
  print_hausdorff(s, r);
  CHECK(s.str() ==
        "# value\twitness_x\twitness_y\tdirection\twitness_kind\tendpoints\tcritical_points\tvoronoi_edges\n"
        "2.5\t1\t-0.5\tP->Q\tcritical\t4\t3\t9\n");
}
