#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rbsect/geometry.hpp"
#include "rbsect/interval_tree.hpp"
#include "rbsect/segment_tree.hpp"

namespace rbsect {

enum class Source : std::uint8_t { step2_cover, step2_end, step3, endpoint_contact };

/// A red/blue intersection point proposed for the final reduction.
/// Curves are identified by their index in the input lists.
struct CandidatePoint {
  std::uint32_t red = 0;
  Point point;
  std::uint32_t blue = 0;
  Source source = Source::step2_cover;

  friend bool operator==(const CandidatePoint&, const CandidatePoint&) = default;
};

/// Intersection configuration of a blue curve with the lowest and highest
/// red curve of its rank interval.
enum class CaseTag : std::uint8_t { single, once_once, once_twice, twice_nested, twice_disjoint, interleaved };

/// A piece of a blue curve restricted to [x_lo, x_hi] inside the slab of
/// `node`, crossing each red curve of ranks [lo, hi] of C_A(node) once.
struct BlueSubsegment {
  std::uint32_t blue = 0;
  std::uint32_t node = 0;
  double x_lo = 0, x_hi = 0;
  std::int32_t lo = 0, hi = 0;
  CaseTag tag = CaseTag::single;
  bool kept = false;  // rank interval inherited from the unsplit curve
};

struct FirstLastEntry {
  std::optional<CandidatePoint> first;
  std::optional<CandidatePoint> last;
};

using FirstLastResult = std::vector<FirstLastEntry>;

/// Per-node record of one shrink step, kept for invariant checks.
struct ShrinkRecord {
  std::uint32_t node = 0;
  std::int32_t reference = 0;
  struct Item {
    RankInterval interval;  // owner indexes the node's subsegments
    double xkey;
  };
  std::vector<Item> ordered;   // sorted by x-key
  std::vector<std::pair<std::size_t, RankInterval>> pieces;  // (index into ordered, piece)
};

/// Intermediate data of one min-x run, filled only when requested.
struct FirstLastTrace {
  std::vector<BlueSubsegment> subsegments;  // grouped by node
  std::vector<std::pair<std::uint32_t, IntervalTree>> trees_before;
  std::vector<std::pair<std::uint32_t, IntervalTree>> trees_after;
  std::vector<ShrinkRecord> shrinks;
  /// (node, most intervals returned by one stab query at that node)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stab_hits;
  std::size_t xkey_fallbacks = 0;
  std::vector<CandidatePoint> candidates;
};

struct FirstLastOptions {
  bool validate = true;
  /// Same-color curves may meet within this distance of an endpoint.
  double endpoint_tol = 1e-9;
  FirstLastTrace* trace = nullptr;
};

/// Per red curve, the blue intersection with minimal x and the one with
/// maximal x. The maximum comes from a run on the mirrored instance.
FirstLastResult first_last(std::span<const Curve> red, std::span<const Curve> blue,
                           const FirstLastOptions& opts = {});

/// The min-x half: one optional candidate per red curve.
std::vector<std::optional<CandidatePoint>> min_x_run(std::span<const Curve> red,
                                                     std::span<const Curve> blue,
                                                     const FirstLastOptions& opts = {});

// Individual steps, exposed for testing.

/// Neighbour candidates of every a in C_A(v) and E_A(v) against C_B(v).
std::vector<CandidatePoint> step2_cover_candidates(const SegTree& t);

/// Candidates for red/blue pairs whose x-projections meet in one point.
std::vector<CandidatePoint> endpoint_contact_candidates(std::span<const Curve> red,
                                                        std::span<const Curve> blue);

/// Rank intervals of the blue curves in E_B(v) against C_A(v), split so
/// that every piece crosses each red of its interval exactly once.
std::vector<BlueSubsegment> step31_rank_intervals(const SegTree& t, std::uint32_t v);

struct ShrinkInput {
  RankInterval interval;
  double xkey;
};

/// Prefix-min/max shrinking of the intervals held by one interval-tree
/// node. Inputs are ordered by (xkey, owner); empty results are dropped.
std::vector<RankInterval> step33_shrink(std::span<const ShrinkInput> entries,
                                        ShrinkRecord* record = nullptr);

/// Minimal-x candidate per red curve; ties go to the lower blue index.
std::vector<std::optional<CandidatePoint>> step4_reduce(std::vector<CandidatePoint> cands,
                                                        std::size_t red_count);

}  // namespace rbsect
