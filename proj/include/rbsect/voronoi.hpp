#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rbsect/geometry.hpp"

namespace rbsect {

/// An x-monotone piece of the bisector of sites s1 < s2 on which both are
/// jointly nearest among all elementary sites.
struct VoronoiEdge {
  Curve curve;
  std::uint32_t s1 = 0, s2 = 0;
};

/// Voronoi edges of a segment set in a frame rotated by `angle` about the
/// origin. Sites, box and edges are given in that frame.
struct VoronoiDiagram {
  double angle = 0;
  Box box;
  std::vector<Site> sites;
  std::vector<std::uint32_t> site_segment;  // input segment owning each site
  std::vector<VoronoiEdge> edges;

  Point to_frame(Point p) const { return rotate(p, angle); }
  Point from_frame(Point p) const { return rotate(p, -angle); }
};

/// Endpoints (shared ones once) and open interiors, in input order.
std::vector<Site> elementary_sites(std::span<const Segment> segs,
                                   std::vector<std::uint32_t>* owner = nullptr);

/// Distance to a point site, or the perpendicular distance to a segment
/// site when the foot lies on the segment and infinity otherwise.
double elementary_distance(Point p, const Site& s);

struct VoronoiOptions {
  /// Rotation step tried when an input or output piece is vertical.
  double rotation_step = 1e-3;
  int max_rotations = 6;
};

/// Edges of VD(Q) clipped to a box three times the extent of Q and
/// `also`. Segments in `also` take part in the vertical check only, so a
/// caller can get a frame in which its own segments are x-monotone too.
/// Throws std::invalid_argument for empty Q and ValidationError when no
/// rotation avoids vertical pieces.
VoronoiDiagram voronoi_edges(std::span<const Segment> Q, std::span<const Segment> also = {},
                             const VoronoiOptions& opts = {});

/// A segment mapped into the rotated frame.
Segment to_frame(const VoronoiDiagram& d, const Segment& s);

}  // namespace rbsect
