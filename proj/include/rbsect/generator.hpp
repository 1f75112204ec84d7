#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rbsect/instance.hpp"

namespace rbsect {

enum class GenKind { random_disjoint, grid_crossing, nested_parabola, segments };

std::optional<GenKind> parse_gen_kind(std::string_view s);
std::string_view gen_kind_name(GenKind k);

/// Deterministic well-behaved red/blue instance with about n curves in
/// total (exactly n except for nested_parabola regions cut at the end).
///  - random_disjoint: red lines and parabola arcs in a cell grid with
///    horizontal merges, blue lines in an offset grid with vertical merges.
///  - grid_crossing: near-horizontal red rows crossed by every
///    near-vertical blue column; for n < 4 the single blue curve is a cap
///    that cuts every row twice.
///  - nested_parabola: stacked regions of red lines under nested blue bumps,
///    and red cap/cup pairs cut twice each by blue lines.
/// segments is not a curve instance; see generate_segments.
Instance generate(GenKind kind, std::size_t n, std::uint64_t seed);

struct SegmentSets {
  std::vector<Segment> p, q;
};

/// Two independent sets of n non-crossing segments in [0, 10]^2. A few
/// segments are exactly vertical and some cells hold two segments sharing
/// an endpoint.
SegmentSets generate_segments(std::size_t n, std::uint64_t seed);

}  // namespace rbsect
