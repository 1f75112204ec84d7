#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rbsect/counters.hpp"

namespace rbsect {

/// Closed range of ranks [lo, hi] owned by a blue (sub)segment.
struct RankInterval {
  std::int32_t lo = 0;
  std::int32_t hi = 0;
  std::uint32_t owner = 0;
  std::uint8_t tag = 0;

  bool contains(std::int32_t r) const { return lo <= r && r <= hi; }
  friend bool operator==(const RankInterval&, const RankInterval&) = default;
};

/// Static interval tree over rank intervals.
///
/// The search tree is the complete binary search tree over all 2k interval
/// endpoints (ties broken by owner). Each interval lives at the highest node
/// whose reference value it contains. Node i of the tree is the i-th key in
/// sorted order.
class IntervalTree {
 public:
  struct Node {
    std::int32_t ref;
    std::int32_t left;   // -1 when absent
    std::int32_t right;  // -1 when absent
  };

  IntervalTree() = default;
  static IntervalTree build(std::vector<RankInterval> intervals);

  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }
  std::int32_t root() const { return root_; }
  /// Number of search-tree levels; 0 for an empty tree.
  int height() const { return height_; }
  std::size_t node_count() const { return nodes_.size(); }
  const Node& node(std::int32_t i) const { return nodes_[i]; }

  /// Intervals stored at node i, by ascending lo and by descending hi.
  std::span<const RankInterval> by_lo(std::int32_t i) const;
  std::span<const RankInterval> by_hi(std::int32_t i) const;

  /// Calls f(interval) for every stored interval containing r.
  template <class F>
  void stab(std::int32_t r, F&& f) const {
    std::int32_t u = root_;
    while (u >= 0) {
      counters::bump(Op::stab_visit);
      const Node& nd = nodes_[u];
      if (r < nd.ref) {
        for (const RankInterval& iv : by_lo(u)) {
          if (iv.lo > r) break;
          f(iv);
        }
        u = nd.left;
      } else if (r > nd.ref) {
        for (const RankInterval& iv : by_hi(u)) {
          if (iv.hi < r) break;
          f(iv);
        }
        u = nd.right;
      } else {
        for (const RankInterval& iv : by_lo(u)) f(iv);
        return;
      }
    }
  }

  std::vector<RankInterval> stab(std::int32_t r) const {
    std::vector<RankInterval> out;
    stab(r, [&](const RankInterval& iv) { out.push_back(iv); });
    return out;
  }

  /// Node index holding each input interval, in input order.
  const std::vector<std::int32_t>& assignment() const { return assign_; }
  const std::vector<RankInterval>& intervals() const { return intervals_; }

 private:
  std::vector<RankInterval> intervals_;
  std::vector<std::int32_t> assign_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> off_;
  std::vector<RankInterval> lo_sorted_, hi_sorted_;
  std::int32_t root_ = -1;
  int height_ = 0;
};

}  // namespace rbsect
