#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace rbsect {

// Elementary operations tallied for the work-bound smoke checks.
enum class Op : int {
  eval_y,
  intersect,
  search_probe,
  stab_visit,
  tree_entry,
  sort_item,
};
inline constexpr int kOpCount = 6;

std::string_view op_name(Op op);

struct OpCounts {
  std::array<std::uint64_t, kOpCount> v{};

  std::uint64_t operator[](Op op) const { return v[static_cast<int>(op)]; }
  std::uint64_t total() const;
  OpCounts operator-(const OpCounts& o) const;
};

namespace counters {

void add(Op op, std::uint64_t k = 1);
inline void bump(Op op) { add(op, 1); }

/// Sum over all threads. Only meaningful between parallel phases.
OpCounts snapshot();
void reset();

}  // namespace counters
}  // namespace rbsect
