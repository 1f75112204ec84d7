#include "rbsect/counters.hpp"

#include <atomic>
#include <mutex>
#include <vector>

namespace rbsect {

std::string_view op_name(Op op) {
  switch (op) {
    case Op::eval_y: return "eval_y";
    case Op::intersect: return "intersect";
    case Op::search_probe: return "search_probe";
    case Op::stab_visit: return "stab_visit";
    case Op::tree_entry: return "tree_entry";
    case Op::sort_item: return "sort_item";
  }
  return "?";
}

std::uint64_t OpCounts::total() const {
  std::uint64_t s = 0;
  for (auto x : v) s += x;
  return s;
}

OpCounts OpCounts::operator-(const OpCounts& o) const {
  OpCounts r;
  for (int i = 0; i < kOpCount; ++i) r.v[i] = v[i] - o.v[i];
  return r;
}

namespace counters {
namespace {

struct alignas(64) Slot {
  std::array<std::atomic<std::uint64_t>, kOpCount> v{};
};

std::mutex registry_mutex;
std::vector<Slot*>& registry() {
  static std::vector<Slot*> r;
  return r;
}

// Slots are never freed: OpenMP pools keep threads alive and the count is
// bounded by the number of threads ever created.
Slot& local_slot() {
  thread_local Slot* slot = [] {
    auto* s = new Slot;
    std::lock_guard lock(registry_mutex);
    registry().push_back(s);
    return s;
  }();
  return *slot;
}

}  // namespace

void add(Op op, std::uint64_t k) {
  auto& c = local_slot().v[static_cast<int>(op)];
  c.store(c.load(std::memory_order_relaxed) + k, std::memory_order_relaxed);
}

OpCounts snapshot() {
  OpCounts r;
  std::lock_guard lock(registry_mutex);
  for (const Slot* s : registry())
    for (int i = 0; i < kOpCount; ++i) r.v[i] += s->v[i].load(std::memory_order_relaxed);
  return r;
}

void reset() {
  std::lock_guard lock(registry_mutex);
  for (Slot* s : registry())
    for (auto& c : s->v) c.store(0, std::memory_order_relaxed);
}

}  // namespace counters
}  // namespace rbsect
