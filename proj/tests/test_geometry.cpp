#include <cmath>

#include "doctest.h"
#include "rbsect/geometry.hpp"
#include "test_support.hpp"

using namespace rbsect;
using rbsect::testing::residual;
using rbsect::testing::Rng;

namespace {

Curve std_parabola(double t0, double t1) {
  // y = x^2/2 + 1/2
  return Curve::parabola(ParabolaArc{{0, 1}, {0, 0}, {1, 0}, t0, t1});
}

Arc sideways_parabola(double t0, double t1) {
  // x = y^2
  Arc a;
  a.kind = CurveKind::parabola;
  a.parabola = ParabolaArc{{0.25, 0}, {-0.25, 0}, {0, 1}, t0, t1};
  return a;
}

}  // namespace

TEST_CASE("eval_y on lines and parabolas") {
  CHECK(eval_y(Curve::line({0, 0}, {4, 4}), 2) == 2);
  CHECK(eval_y(std_parabola(-2, 2), 1) == doctest::Approx(1).epsilon(1e-15));
  CHECK(eval_y(Curve::line({0, 5}, {10, 5}), 7) == 5);
  CHECK_THROWS_AS((void)eval_y(Curve::line({0, 0}, {4, 4}), 5), std::domain_error);
  CHECK_THROWS_AS((void)eval_y(std_parabola(-2, 2), -2.1), std::domain_error);
}

TEST_CASE("construction rejects verticals and non-monotone arcs") {
  CHECK_THROWS_AS(Curve::line({1, 0}, {1, 3}), ValidationError);
  // x = y^2 over y in [-1,1] has a vertical tangent inside
  CHECK_THROWS_AS(Curve::parabola(sideways_parabola(-1, 1).parabola), ValidationError);
  // focus on the directrix
  CHECK_THROWS_AS(Curve::parabola(ParabolaArc{{0, 0}, {0, 0}, {1, 0}, -1, 1}), ValidationError);
}

TEST_CASE("intersect examples") {
  SUBCASE("symmetric X") {
    auto r = intersect(Curve::line({0, 0}, {4, 4}), Curve::line({0, 4}, {4, 0}));
    REQUIRE(r.size() == 1);
    CHECK(r[0].x == doctest::Approx(2));
    CHECK(r[0].y == doctest::Approx(2));
  }
  SUBCASE("line through parabola twice") {
    auto r = intersect(Curve::line({-2, 1}, {2, 1}), std_parabola(-2, 2));
    REQUIRE(r.size() == 2);
    CHECK(r[0].x == doctest::Approx(-1).epsilon(1e-12));
    CHECK(r[0].y == doctest::Approx(1).epsilon(1e-12));
    CHECK(r[1].x == doctest::Approx(1).epsilon(1e-12));
  }
  SUBCASE("tangent touch counts once") {
    auto r = intersect(Curve::line({-2, 0.5}, {2, 0.5}), std_parabola(-2, 2));
    REQUIRE(r.size() == 1);
    CHECK(std::abs(r[0].x) < 1e-9);
    CHECK(r[0].y == doctest::Approx(0.5));
  }
  SUBCASE("disjoint") {
    CHECK(intersect(Curve::line({0, 0}, {1, 0}), Curve::line({2, 0}, {3, 1})).empty());
    CHECK(intersect(Curve::line({-2, 0.2}, {2, 0.2}), std_parabola(-2, 2)).empty());
  }
  SUBCASE("shared endpoint") {
    auto r = intersect(Curve::line({0, 0}, {1, 1}), Curve::line({1, 1}, {2, 0}));
    REQUIRE(r.size() == 1);
    CHECK(r[0] == Point{1, 1});
  }
  SUBCASE("collinear overlap reports the overlap extremes") {
    auto r = intersect(Curve::line({0, 0}, {4, 4}), Curve::line({2, 2}, {6, 6}));
    CHECK(r.overlap);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == Point{2, 2});
    CHECK(r[1] == Point{4, 4});
  }
}

TEST_CASE("split_x_monotone") {
  auto two = split_x_monotone(sideways_parabola(-1, 1));
  REQUIRE(two.size() == 2);
  // both pieces start at the vertex (0,0) and end at x = 1
  for (const auto& c : two) {
    CHECK(dist(c.left(), Point{0, 0}) < 1e-12);
    CHECK(std::abs(c.right().x - 1) < 1e-12);
  }
  CHECK(std::abs(two[0].right().y - two[1].right().y) == doctest::Approx(2));

  CHECK(split_x_monotone(sideways_parabola(0.1, 1)).size() == 1);

  Arc already;
  already.kind = CurveKind::parabola;
  already.parabola = ParabolaArc{{0, 1}, {0, 0}, {1, 0}, -2, 2};
  auto one = split_x_monotone(already);
  REQUIRE(one.size() == 1);
  CHECK(one[0].same_geometry(std_parabola(-2, 2)));
}

TEST_CASE("point_site_distance") {
  CHECK(point_site_distance({0, 0}, Site::point({3, 4})) == doctest::Approx(5));
  CHECK(point_site_distance({5, 2}, Site::segment({0, 0}, {10, 0})) == doctest::Approx(2));
  CHECK(point_site_distance({-3, 4}, Site::segment({0, 0}, {10, 0})) == doctest::Approx(5));
}

TEST_CASE("bisector examples") {
  SUBCASE("two points") {
    auto b = bisector(Site::point({0, 0}), Site::point({2, 0}));
    REQUIRE(b.size() == 1);
    CHECK(b[0].kind == CurveKind::line);
    CHECK(b[0].p.x == doctest::Approx(1));
    CHECK(b[0].q.x == doctest::Approx(1));
  }
  SUBCASE("point and segment") {
    auto b = bisector(Site::point({0, 1}), Site::segment({-5, 0}, {5, 0}));
    REQUIRE(b.size() == 1);
    CHECK(b[0].kind == CurveKind::parabola);
    const QuadPath qp = b[0].path();
    for (int i = 0; i <= 10; ++i) {
      const Point p = qp.at(qp.t0 + (qp.t1 - qp.t0) * i / 10);
      CHECK(p.y == doctest::Approx(p.x * p.x / 2 + 0.5).epsilon(1e-12));
    }
  }
  SUBCASE("parallel segments") {
    auto b = bisector(Site::segment({0, 0}, {10, 0}), Site::segment({0, 2}, {10, 2}));
    REQUIRE(b.size() == 1);
    CHECK(b[0].p.y == doctest::Approx(1));
    CHECK(b[0].q.y == doctest::Approx(1));
    CHECK(std::min(b[0].p.x, b[0].q.x) == doctest::Approx(0));
    CHECK(std::max(b[0].p.x, b[0].q.x) == doctest::Approx(10));
  }
  SUBCASE("own endpoint") {
    auto b = bisector(Site::point({0, 0}), Site::segment({0, 0}, {10, 0}));
    REQUIRE(b.size() == 1);
    CHECK(b[0].p.x == doctest::Approx(0));
    CHECK(b[0].q.x == doctest::Approx(0));
  }
  CHECK_THROWS_AS(bisector(Site::point({1, 1}), Site::point({1, 1})), std::invalid_argument);
}

TEST_CASE("property: eval_y stays on the curve") {
  Rng rng(11);
  for (int k = 0; k < 500; ++k) {
    const Curve c = rbsect::testing::random_curve(rng);
    for (int i = 0; i <= 20; ++i) {
      const double x = c.x_min() + (c.x_max() - c.x_min()) * i / 20;
      REQUIRE(residual(c, {x, c.eval_y(x)}) <= 1e-9);
    }
  }
}

TEST_CASE("property: intersect is symmetric and exact") {
  Rng rng(12);
  int nonempty = 0;
  for (int k = 0; k < 4000; ++k) {
    Curve a = rbsect::testing::random_curve(rng);
    Curve b = rbsect::testing::random_line(rng);
    if (k % 3 == 0) std::swap(a, b);
    const auto ab = intersect(a, b);
    const auto ba = intersect(b, a);
    REQUIRE(ab.size() == ba.size());
    REQUIRE(ab.size() <= 2);
    for (std::size_t i = 0; i < ab.size(); ++i) {
      CHECK(dist(ab[i], ba[i]) <= 1e-9);
      CHECK(residual(a, ab[i]) <= 1e-9);
      CHECK(residual(b, ab[i]) <= 1e-9);
      CHECK(a.spans_x(ab[i].x));
      CHECK(b.spans_x(ab[i].x));
    }
    nonempty += !ab.empty();
  }
  CHECK(nonempty > 200);
}

TEST_CASE("property: split pieces are valid x-monotone curves covering the arc") {
  Rng rng(13);
  for (int k = 0; k < 300; ++k) {
    Arc arc;
    arc.kind = CurveKind::parabola;
    const double ang = rng.uniform(0, 6.28);
    arc.parabola.direction = {std::cos(ang), std::sin(ang)};
    arc.parabola.directrix_point = {rng.uniform(-3, 3), rng.uniform(-3, 3)};
    arc.parabola.focus = arc.parabola.directrix_point + Point{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    arc.parabola.t_lo = rng.uniform(-5, 0);
    arc.parabola.t_hi = rng.uniform(0.1, 5);
    if (std::abs(dot(arc.parabola.focus - arc.parabola.directrix_point,
                     perp(arc.parabola.direction))) < 0.05)
      continue;
    std::vector<Curve> pieces;
    try {
      pieces = split_x_monotone(arc);
    } catch (const ValidationError&) {
      continue;  // a piece without x-extent
    }
    REQUIRE(!pieces.empty());
    REQUIRE(pieces.size() <= 2);
    const QuadPath qp = arc.path();
    const Point s = qp.at(qp.t0), e = qp.at(qp.t1);
    auto has_end = [&](Point p) {
      for (const auto& c : pieces)
        if (dist(c.left(), p) < 1e-9 || dist(c.right(), p) < 1e-9) return true;
      return false;
    };
    CHECK(has_end(s));
    CHECK(has_end(e));
    for (const auto& c : pieces) CHECK(c.x_max() > c.x_min());
  }
}

TEST_CASE("property: bisector points are equidistant") {
  Rng rng(14);
  for (int k = 0; k < 200; ++k) {
    auto site = [&]() {
      if (rng.uniform(0, 1) < 0.5) return Site::point({rng.uniform(0, 10), rng.uniform(0, 10)});
      return Site::segment({rng.uniform(0, 10), rng.uniform(0, 10)},
                           {rng.uniform(0, 10), rng.uniform(0, 10)});
    };
    const Site s1 = site(), s2 = site();
    for (const Arc& arc : bisector(s1, s2)) {
      const QuadPath qp = arc.path();
      for (int i = 0; i < 1000; ++i) {
        const Point p = qp.at(qp.t0 + (qp.t1 - qp.t0) * (i + 0.5) / 1000);
        const double d1 = point_site_distance(p, s1), d2 = point_site_distance(p, s2);
        REQUIRE(std::abs(d1 - d2) <= 1e-9 * (1 + d1));
      }
    }
  }
}
