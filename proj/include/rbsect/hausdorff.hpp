#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "rbsect/geometry.hpp"
#include "rbsect/voronoi.hpp"

namespace rbsect {

/// Which directed distance attains the value; `both` when the two agree.
enum class Direction : std::uint8_t { p_to_q, q_to_p, both };
enum class WitnessKind : std::uint8_t { endpoint, critical_point };

std::string_view direction_name(Direction d);
std::string_view witness_kind_name(WitnessKind k);

struct HausdorffResult {
  double value = 0;
  Point witness;  // on the set the maximum is taken over
  Direction direction = Direction::p_to_q;
  WitnessKind witness_kind = WitnessKind::endpoint;
  std::size_t endpoints = 0;        // endpoint candidates evaluated
  std::size_t critical_points = 0;  // first/last candidates evaluated
  std::size_t voronoi_edges = 0;
  /// Critical points whose edge site is farther than the nearest site by
  /// more than 1e-9; counted only when site checks are on.
  std::size_t site_mismatches = 0;
};

/// The extreme intersection of one Voronoi edge with P.
struct CriticalPoint {
  std::uint32_t edge = 0;
  std::uint32_t segment = 0;  // index into P
  Point point;
  bool last = false;
};

/// First and last intersection along every edge with the segments of P.
/// P must be given in the diagram's frame. A point met once is reported as
/// both first and last. Throws ValidationError when P or the edges are not
/// x-monotone and internally non-crossing.
std::vector<CriticalPoint> critical_points(std::span<const Segment> P, const VoronoiDiagram& d);

/// Intermediate data of a directed run, in original coordinates apart
/// from the diagram, which stays in its own frame.
struct HausdorffTrace {
  VoronoiDiagram diagram;
  std::vector<Point> critical;
};

struct HausdorffOptions {
#ifdef NDEBUG
  bool check_sites = false;
#else
  bool check_sites = true;
#endif
  VoronoiOptions voronoi;
  /// Filled by directed_hausdorff; hausdorff keeps the dominant direction.
  HausdorffTrace* trace = nullptr;
};

/// Directed distance d_H(P, Q). Throws std::invalid_argument for empty P
/// or Q.
HausdorffResult directed_hausdorff(std::span<const Segment> P, std::span<const Segment> Q,
                                   const HausdorffOptions& opts = {});

/// Undirected distance: the larger of the two directed runs.
HausdorffResult hausdorff(std::span<const Segment> P, std::span<const Segment> Q,
                          const HausdorffOptions& opts = {});

/// Tab-separated header (with a leading '#') and one record line.
void print_hausdorff(std::ostream& out, const HausdorffResult& r);

}  // namespace rbsect
