#include <algorithm>

#include "doctest.h"
#include "invariants.hpp"
#include "rbsect/generator.hpp"
#include "rbsect/segment_tree.hpp"

using namespace rbsect;

namespace {

void check_structure(const SegTree& t) { CHECK(rbsect::testing::check_segment_tree(t) == ""); }

}  // namespace

TEST_CASE("single segment anatomy") {
  const std::vector<Curve> red{Curve::line({1, 0}, {3, 1})};
  const SegTree t = SegTree::build(red, {});
  CHECK(t.elementary_count() == 3);
  CHECK(t.leaf_count() == 4);
  int covered = 0;
  for (std::uint32_t v = 1; v < t.node_end(); ++v)
    for (std::uint32_t c : t.cover(v, Color::red)) {
      CHECK(c == 0);
      CHECK(t.lo(v) == 1);
      CHECK(t.hi(v) == 3);
      ++covered;
    }
  CHECK(covered == 1);
  check_structure(t);
}

TEST_CASE("four segments in the textbook arrangement") {
  // s2 and s3 cross inside a shared cover node; s1 meets s2 near its end.
  const std::vector<Curve> red{Curve::line({0, 3}, {4, 2}), Curve::line({6, 0}, {9, 1})};
  const std::vector<Curve> blue{Curve::line({1, 0}, {8, 3}), Curve::line({2, 4}, {5, 3.5})};
  const SegTree t = SegTree::build(red, blue);
  std::size_t entries = 0;
  for (std::uint32_t v = 1; v < t.node_end(); ++v)
    entries += t.cover(v, Color::red).size() + t.cover(v, Color::blue).size();
  CHECK(entries <= 2 * static_cast<std::size_t>(t.depth()) * 4);
  check_structure(t);
  CHECK(!t.dump().empty());
}

TEST_CASE("cover and end lists follow their definitions on random instances") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    for (GenKind kind : {GenKind::random_disjoint, GenKind::nested_parabola, GenKind::grid_crossing}) {
      const Instance inst = generate(kind, 60 + 20 * seed, seed);
      check_structure(SegTree::build(inst.red, inst.blue));
    }
  }
}

TEST_CASE("every red/blue intersection is witnessed at some node") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance inst = generate(seed % 2 ? GenKind::random_disjoint : GenKind::nested_parabola, 120, seed);
    CHECK(rbsect::testing::check_locality(SegTree::build(inst.red, inst.blue)) == "");
  }
}

TEST_CASE("y_rank") {
  const std::vector<Curve> blue{Curve::line({0, 0}, {10, 0}), Curve::line({0, 2}, {10, 2}),
                                Curve::line({0, 4}, {10, 4})};
  const SegTree t = SegTree::build({}, blue);
  std::uint32_t v = 0;
  for (std::uint32_t u = 1; u < t.node_end(); ++u)
    if (t.cover(u, Color::blue).size() == 3) v = u;
  REQUIRE(v != 0);
  const RankRange mid = t.y_rank(v, Color::blue, 5, 1);
  CHECK(mid.pred == 0);
  CHECK(mid.succ == 1);
  const RankRange below = t.y_rank(v, Color::blue, 5, -1);
  CHECK(below.pred == -1);
  CHECK(below.succ == 0);
  const RankRange above = t.y_rank(v, Color::blue, 5, 9);
  CHECK(above.pred == 2);
  CHECK(above.succ == -1);
  const RankRange on = t.y_rank(v, Color::blue, 5, 2, 1e-9);
  CHECK(on.pred == 0);
  CHECK(on.succ == 2);

  SUBCASE("agrees with a linear scan") {
    const Instance inst = generate(GenKind::grid_crossing, 200, 3);
    const SegTree g = SegTree::build(inst.red, inst.blue);
    int checked = 0;
    for (std::uint32_t u = 1; u < g.node_end(); ++u) {
      const auto list = g.cover(u, Color::red);
      if (list.empty()) continue;
      for (double f : {0.1, 0.5, 0.9}) {
        const double x = g.lo(u) + f * (g.hi(u) - g.lo(u));
        for (double y : {-5.0, 0.3, 17.5, 50.2, 1000.0}) {
          std::ptrdiff_t pred = -1, succ = -1;
          for (std::size_t k = 0; k < list.size(); ++k) {
            const double ye = inst.red[list[k]].eval_y(x);
            if (ye < y) pred = static_cast<std::ptrdiff_t>(k);
            if (ye > y && succ < 0) succ = static_cast<std::ptrdiff_t>(k);
          }
          const RankRange r = g.y_rank(u, Color::red, x, y);
          CHECK(r.pred == pred);
          CHECK(r.succ == succ);
          ++checked;
        }
      }
    }
    CHECK(checked > 100);
  }
}

TEST_CASE("same-color crossings are rejected with the pair named") {
  const std::vector<Curve> red{Curve::line({0, 0}, {4, 4}), Curve::line({0, 4}, {4, 0})};
  CHECK_THROWS_WITH_AS(SegTree::build(red, {}), doctest::Contains("red curves 0 and 1"), ValidationError);
  const std::vector<Curve> blue{Curve::line({0, 0}, {4, 0}), Curve::line({1, -1}, {3, 1}),
                                Curve::line({5, 0}, {6, 0})};
  CHECK_THROWS_WITH_AS(SegTree::build({}, blue), doctest::Contains("blue curves 0 and 1"), ValidationError);
  // shared endpoints are fine
  const std::vector<Curve> chain{Curve::line({0, 0}, {1, 1}), Curve::line({1, 1}, {2, 0})};
  CHECK_NOTHROW(SegTree::build(chain, {}));
}
