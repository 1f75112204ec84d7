#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rbsect/geometry.hpp"

namespace rbsect {

enum class Color : std::uint8_t { red = 0, blue = 1 };

struct SegTreeOptions {
  /// Reject same-color curves that meet anywhere other than near a shared
  /// endpoint. `endpoint_tol` is the allowed distance from a meeting point
  /// to an endpoint of each curve.
  bool validate = true;
  double endpoint_tol = 1e-9;
};

/// Predecessor and successor positions of a query point in a cover list.
/// -1 means none. Entries strictly between pred and succ pass through the
/// query point within the tolerance.
struct RankRange {
  std::ptrdiff_t pred = -1;
  std::ptrdiff_t succ = -1;
};

/// A curve's occurrence in a cover list: the node and the position (rank)
/// in that node's y-sorted list.
struct CoverSlot {
  std::uint32_t node;
  std::uint32_t rank;
};

/// Complete balanced segment tree over the red and blue curves.
///
/// Nodes use heap layout, root 1, children 2v and 2v+1. Leaves are the
/// closed elementary intervals between consecutive distinct endpoint
/// abscissas plus two unbounded ones, padded to a power of two with empty
/// intervals at +inf. Curves are referenced by their index in the input.
class SegTree {
 public:
  static SegTree build(std::span<const Curve> red, std::span<const Curve> blue,
                       const SegTreeOptions& opts = {});

  std::size_t leaf_count() const { return leaves_; }
  /// Number of real (non-padding) elementary intervals.
  std::size_t elementary_count() const { return xs_.size() + 1; }
  /// Number of levels, leaves included.
  int depth() const { return depth_; }
  std::uint32_t root() const { return 1; }
  std::size_t node_end() const { return 2 * leaves_; }
  bool is_leaf(std::uint32_t v) const { return v >= leaves_; }
  const std::vector<double>& breakpoints() const { return xs_; }

  double lo(std::uint32_t v) const { return lo_[v]; }
  double hi(std::uint32_t v) const { return hi_[v]; }

  std::span<const std::uint32_t> cover(std::uint32_t v, Color c) const;
  std::span<const std::uint32_t> ends(std::uint32_t v, Color c) const;
  std::span<const CoverSlot> cover_slots(Color c, std::uint32_t curve) const;

  std::span<const Curve> curves(Color c) const { return c == Color::red ? red_ : blue_; }
  const Curve& curve(Color c, std::uint32_t i) const { return curves(c)[i]; }

  /// Position of (x, y) within the y-order of C(v). x must lie in the slab.
  RankRange y_rank(std::uint32_t v, Color c, double x, double y, double tol = 0) const;

  std::size_t total_entries() const;

  /// One line per non-empty node: index, interval and the four list sizes.
  std::string dump() const;

 private:
  struct Lists {
    std::vector<std::size_t> cover_off, end_off, slot_off;
    std::vector<std::uint32_t> cover, ends;
    std::vector<CoverSlot> slots;
  };

  void validate(Color c, double tol) const;

  std::vector<Curve> red_, blue_;
  std::vector<double> xs_;
  std::vector<double> lo_, hi_;
  std::size_t leaves_ = 1;
  int depth_ = 1;
  Lists lists_[2];
};

}  // namespace rbsect
