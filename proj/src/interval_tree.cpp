#include "rbsect/interval_tree.hpp"

#include <algorithm>
#include <tuple>

#include "rbsect/parallel.hpp"

namespace rbsect {
namespace {

struct Key {
  std::int32_t value;
  std::uint32_t owner;
  std::uint8_t which;  // 0 = lo endpoint, 1 = hi endpoint

  friend bool operator<(const Key& a, const Key& b) {
    return std::tie(a.value, a.owner, a.which) < std::tie(b.value, b.owner, b.which);
  }
};

// Complete BST over sorted positions [a, b): the root is the middle slot.
std::int32_t link(std::vector<IntervalTree::Node>& nodes, std::int32_t a, std::int32_t b, int depth,
                  int& height) {
  if (a >= b) return -1;
  const std::int32_t mid = a + (b - a) / 2;
  height = std::max(height, depth);
  nodes[mid].left = link(nodes, a, mid, depth + 1, height);
  nodes[mid].right = link(nodes, mid + 1, b, depth + 1, height);
  return mid;
}

}  // namespace

IntervalTree IntervalTree::build(std::vector<RankInterval> intervals) {
  IntervalTree t;
  t.intervals_ = std::move(intervals);
  const std::size_t k = t.intervals_.size();
  if (k == 0) return t;

  std::vector<Key> keys(2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    keys[2 * i] = {t.intervals_[i].lo, t.intervals_[i].owner, 0};
    keys[2 * i + 1] = {t.intervals_[i].hi, t.intervals_[i].owner, 1};
  }
  counters::add(Op::sort_item, keys.size());
  parallel::parallel_sort(keys.begin(), keys.end(), std::less<>());

  t.nodes_.resize(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) t.nodes_[i] = {keys[i].value, -1, -1};
  t.root_ = link(t.nodes_, 0, static_cast<std::int32_t>(keys.size()), 1, t.height_);

  t.assign_.resize(k);
  parallel::parallel_for(k, [&](std::size_t i) {
    const RankInterval& iv = t.intervals_[i];
    std::int32_t u = t.root_;
    for (;;) {
      const Node& nd = t.nodes_[u];
      if (iv.hi < nd.ref)
        u = nd.left;
      else if (iv.lo > nd.ref)
        u = nd.right;
      else
        break;
    }
    t.assign_[i] = u;
  });

  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  std::vector<std::size_t> order_hi = order;
  auto by = [&](bool low) {
    return [&, low](std::size_t a, std::size_t b) {
      const RankInterval &x = t.intervals_[a], &y = t.intervals_[b];
      if (t.assign_[a] != t.assign_[b]) return t.assign_[a] < t.assign_[b];
      if (low) {
        if (x.lo != y.lo) return x.lo < y.lo;
      } else if (x.hi != y.hi) {
        return x.hi > y.hi;
      }
      return std::tie(x.owner, x.lo, x.hi) < std::tie(y.owner, y.lo, y.hi);
    };
  };
  counters::add(Op::sort_item, 2 * k);
  parallel::parallel_sort(order.begin(), order.end(), by(true));
  parallel::parallel_sort(order_hi.begin(), order_hi.end(), by(false));

  std::vector<std::size_t> count(t.nodes_.size(), 0);
  for (std::int32_t u : t.assign_) ++count[u];
  t.off_ = parallel::offsets_from_counts(count);
  t.lo_sorted_.resize(k);
  t.hi_sorted_.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    t.lo_sorted_[i] = t.intervals_[order[i]];
    t.hi_sorted_[i] = t.intervals_[order_hi[i]];
  }
  return t;
}

std::span<const RankInterval> IntervalTree::by_lo(std::int32_t i) const {
  return {lo_sorted_.data() + off_[i], off_[i + 1] - off_[i]};
}

std::span<const RankInterval> IntervalTree::by_hi(std::int32_t i) const {
  return {hi_sorted_.data() + off_[i], off_[i + 1] - off_[i]};
}

}  // namespace rbsect
