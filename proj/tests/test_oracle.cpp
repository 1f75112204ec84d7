#include <cmath>

#include "doctest.h"
#include "rbsect/generator.hpp"
#include "rbsect/oracle.hpp"
#include "test_support.hpp"

using namespace rbsect;
using rbsect::testing::Rng;

TEST_CASE("brute_first_last examples") {
  const std::vector<Curve> red{Curve::line({0, 1}, {10, 1})};
  const std::vector<Curve> blue{Curve::line({2, 0}, {3, 2}), Curve::line({5, 0}, {6, 2})};
  const auto r = brute_first_last(red, blue);
  CHECK(r[0].first->point == Point{2.5, 1});
  CHECK(r[0].last->point == Point{5.5, 1});

  const auto none = brute_first_last(red, {});
  CHECK(!none[0].first);
  CHECK(!none[0].last);

  // tangency of y = 1 - (x - 5)^2 and y = 1
  ParabolaArc a;
  a.focus = {5, 0.75};
  a.directrix_point = {0, 1.25};
  a.direction = {1, 0};
  a.t_lo = 3;
  a.t_hi = 7;
  const auto t = brute_first_last(red, std::vector<Curve>{Curve::parabola(a)});
  REQUIRE(t[0].first);
  CHECK(t[0].first->point.x == doctest::Approx(5));
  CHECK(t[0].first->point == t[0].last->point);
}

TEST_CASE("brute_first_last does not depend on the blue order") {
  const Instance inst = generate(GenKind::grid_crossing, 40, 2);
  auto rev = inst.blue;
  std::reverse(rev.begin(), rev.end());
  const auto a = brute_first_last(inst.red, inst.blue), b = brute_first_last(inst.red, rev);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].first->point == b[i].first->point);
    CHECK(a[i].last->point == b[i].last->point);
  }
  const auto all = oracle_report(inst.red, inst.blue);
  for (const auto& pts : all) {
    CHECK(pts.size() == inst.blue.size());
    for (std::size_t k = 1; k < pts.size(); ++k) CHECK(pts[k - 1].point.x <= pts[k].point.x);
  }
}

TEST_CASE("brute_nearest") {
  const std::vector<Site> sites{Site::segment({1, 0}, {1, 1}), Site::segment({3, 0}, {3, 1})};
  const Nearest n = brute_nearest({0, 0}, sites);
  CHECK(n.site == 0);
  CHECK(n.distance == 1);
  CHECK(brute_nearest({3, 0.5}, sites).distance == 0);
  CHECK_THROWS_AS(brute_nearest({0, 0}, {}), std::invalid_argument);
  // equal distances go to the lower index
  CHECK(brute_nearest({2, 0.5}, sites).site == 0);

  Rng r(1);
  std::vector<Site> rs;
  for (int i = 0; i < 30; ++i) {
    const Point p{r.uniform(0, 10), r.uniform(0, 10)};
    rs.push_back(i % 3 ? Site::point(p) : Site::segment(p, p + Point{r.uniform(0.1, 1), r.uniform(-1, 1)}));
  }
  for (int q = 0; q < 500; ++q) {
    const Point p{r.uniform(-2, 12), r.uniform(-2, 12)};
    double best = INFINITY;
    for (const Site& s : rs) best = std::min(best, point_site_distance(p, s));
    CHECK(brute_nearest(p, rs).distance == best);
  }
}

TEST_CASE("sampled directed Hausdorff") {
  const std::vector<Segment> P{{{0, 0}, {10, 0}}};
  const std::vector<Segment> Q1{{{0, 3}, {10, 3}}};
  const std::vector<Segment> Q2{{{0, 3}, {4, 3}}};
  for (double d : {0.5, 0.1, 0.001}) CHECK(sampled_directed_hausdorff(P, Q1, d) == doctest::Approx(3).epsilon(1e-15));
  CHECK(sampled_directed_hausdorff(P, P, 0.01) <= 1e-12);
  const double s = sampled_directed_hausdorff(P, Q2, 0.001);
  CHECK(std::abs(s - std::sqrt(45.0)) <= 0.0005);
  CHECK(distance_to_segments({10, 0}, Q2) == doctest::Approx(std::sqrt(45.0)));

  SUBCASE("pruned maximum equals the plain sample maximum") {
    const auto sets = generate_segments(25, 4);
    const double delta = 0.05;
    double plain = 0;
    for (const Segment& g : sets.p) {
      const double len = dist(g.a, g.b);
      const auto steps = static_cast<std::size_t>(std::ceil(len / delta));
      for (std::size_t k = 0; k <= steps; ++k) {
        const double t = std::min(static_cast<double>(k) * delta, len) / len;
        plain = std::max(plain, distance_to_segments(g.a + t * (g.b - g.a), sets.q));
      }
    }
    CHECK(sampled_directed_hausdorff(sets.p, sets.q, delta) == plain);
  }
}
