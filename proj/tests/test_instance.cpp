#include <sstream>

#include "doctest.h"
#include "rbsect/generator.hpp"
#include "rbsect/instance.hpp"
#include "rbsect/oracle.hpp"
#include "rbsect/segment_tree.hpp"

using namespace rbsect;

namespace {

std::string print(const Instance& inst) {
  std::ostringstream s;
  print_instance(s, inst);
  return s.str();
}

Instance parse(const std::string& text) {
  std::istringstream in(text);
  return to_instance(parse_instance(in, "test"));
}

}  // namespace

TEST_CASE("parse sections, comments and records") {
  const Instance inst = parse(
      "# a comment\n"
      "[A]\n"
      "L 0 1 10 1   # trailing\n"
      "\n"
      "[B]\n"
      "L 2 0 3 2\n"
      "PAR 5 0.75 0 1.25 1 0 3 7\n");
  REQUIRE(inst.red.size() == 1);
  REQUIRE(inst.blue.size() == 2);
  CHECK(inst.blue[1].kind() == CurveKind::parabola);
  CHECK(inst.blue[1].eval_y(5) == doctest::Approx(1));
  CHECK(inst.blue[0].id() == 0);
  CHECK(inst.blue[1].id() == 1);
}

TEST_CASE("parse errors name the line") {
  CHECK_THROWS_WITH_AS(parse("[A]\nL 0 0 1\n"), "test:2: L expects 4 numbers", ParseError);
  CHECK_THROWS_WITH_AS(parse("L 0 0 1 x\n"), "test:1: bad number 'x'", ParseError);
  CHECK_THROWS_WITH_AS(parse("\n\nQ 1 2\n"), "test:3: unknown record 'Q'", ParseError);
  CHECK_THROWS_WITH_AS(parse("L 1 1 1 1\n"), "test:1: segment endpoints coincide", ParseError);
  CHECK_THROWS_AS(parse("[A] x\n"), ParseError);
  try {
    parse("[B]\nL 0 0 2 2\nL 1 0 1 5\n");
    FAIL("vertical segment accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(read_instance_file("/nonexistent/file.txt"), ParseError);
}

TEST_CASE("segments ignore orientation checks but reject parabolas") {
  std::istringstream in("L 0 0 0 1\nPAR 5 0.75 0 1.25 1 0 3 7\n");
  const InstanceFile f = parse_instance(in, "seg");
  CHECK_THROWS_WITH_AS(to_segments(f.a, "seg"), "seg:2: expected a line segment", ParseError);
  const std::vector<Record> lines(f.a.begin(), f.a.begin() + 1);
  CHECK(to_segments(lines, "seg")[0] == Segment{{0, 0}, {0, 1}});
}

TEST_CASE("print and parse round trip exactly") {
  for (GenKind kind : {GenKind::random_disjoint, GenKind::grid_crossing, GenKind::nested_parabola, GenKind::segments}) {
    const Instance inst = generate(kind, 80, 17);
    const std::string text = print(inst);
    const Instance back = parse(text);
    REQUIRE(back.red.size() == inst.red.size());
    REQUIRE(back.blue.size() == inst.blue.size());
    for (std::size_t i = 0; i < inst.red.size(); ++i) CHECK(back.red[i].same_geometry(inst.red[i]));
    for (std::size_t i = 0; i < inst.blue.size(); ++i) CHECK(back.blue[i].same_geometry(inst.blue[i]));
    CHECK(print(back) == text);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.5e-300) == "-2.5e-300");
}

TEST_CASE("generators are deterministic and well behaved") {
  for (GenKind kind : {GenKind::random_disjoint, GenKind::grid_crossing, GenKind::nested_parabola, GenKind::segments}) {
    CHECK(parse_gen_kind(gen_kind_name(kind)) == kind);
    CHECK(print(generate(kind, 1, 5)) == print(generate(kind, 1, 5)));
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const Instance inst = generate(kind, 300, seed);
      CHECK(print(inst) == print(generate(kind, 300, seed)));
      CHECK_NOTHROW(SegTree::build(inst.red, inst.blue));
      if (kind != GenKind::nested_parabola && kind != GenKind::segments)
        CHECK(inst.red.size() + inst.blue.size() == 300);
    }
  }
  CHECK(!parse_gen_kind("nope"));
}

TEST_CASE("grid-crossing instances have at least n crossings") {
  for (std::size_t n : {2, 3, 4, 5, 10, 64}) {
    const Instance inst = generate(GenKind::grid_crossing, n, 3);
    std::size_t count = 0;
    for (const auto& pts : oracle_report(inst.red, inst.blue)) count += pts.size();
    CHECK(count >= n);
  }
}

TEST_CASE("nested-parabola instances exercise double crossings") {
  const Instance inst = generate(GenKind::nested_parabola, 200, 1);
  std::size_t doubles = 0;
  for (const Curve& a : inst.red)
    for (const Curve& b : inst.blue) doubles += intersect(a, b).size() == 2;
  CHECK(doubles > 10);
}

TEST_CASE("segment sets are internally non-crossing") {
  auto orient = [](Point a, Point b, Point c) {
    const double v = cross(b - a, c - a);
    return (v > 0) - (v < 0);
  };
  auto on = [](Point a, Point b, Point p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
  };
  // closed segments meet anywhere other than at one shared endpoint
  auto bad_meet = [&](const Segment& s, const Segment& t) {
    const bool shared = s.a == t.a || s.a == t.b || s.b == t.a || s.b == t.b;
    const int o1 = orient(s.a, s.b, t.a), o2 = orient(s.a, s.b, t.b);
    const int o3 = orient(t.a, t.b, s.a), o4 = orient(t.a, t.b, s.b);
    if (o1 == 0 && o2 == 0) return on(s.a, s.b, t.a) || on(s.a, s.b, t.b) || on(t.a, t.b, s.a);
    if (shared) return false;
    if (o1 != o2 && o3 != o4) return true;
    return (o1 == 0 && on(s.a, s.b, t.a)) || (o2 == 0 && on(s.a, s.b, t.b)) ||
           (o3 == 0 && on(t.a, t.b, s.a)) || (o4 == 0 && on(t.a, t.b, s.b));
  };
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto s = generate_segments(200, seed);
    CHECK(s.p.size() == 200);
    CHECK(s.q.size() == 200);
    std::size_t verticals = 0;
    for (const auto* set : {&s.p, &s.q})
      for (std::size_t i = 0; i < set->size(); ++i) {
        const Segment& g = (*set)[i];
        verticals += g.a.x == g.b.x;
        CHECK((g.a.x >= 0 && g.a.x <= 10 && g.b.y >= 0 && g.b.y <= 10));
        for (std::size_t j = i + 1; j < set->size(); ++j) REQUIRE(!bad_meet(g, (*set)[j]));
      }
    CHECK(verticals > 0);
  }
}
