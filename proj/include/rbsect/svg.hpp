#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "rbsect/geometry.hpp"
#include "rbsect/voronoi.hpp"

namespace rbsect {

/// A static plot of two segment sets, the Voronoi edges of one of them,
/// the critical points and the witness with its distance circle.
struct SvgScene {
  std::vector<Segment> p, q;
  const VoronoiDiagram* diagram = nullptr;
  std::vector<Point> critical;
  std::optional<Point> witness;
  double radius = 0;
};

void write_svg(std::ostream& out, const SvgScene& scene, double width = 800);

}  // namespace rbsect
