#include <benchmark/benchmark.h>

#include <map>

#include "rbsect/counters.hpp"
#include "rbsect/first_last.hpp"
#include "rbsect/generator.hpp"
#include "rbsect/hausdorff.hpp"
#include "rbsect/oracle.hpp"
#include "rbsect/parallel.hpp"

using namespace rbsect;

namespace {

const Instance& instance(std::size_t n) {
  static std::map<std::size_t, Instance> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, generate(GenKind::random_disjoint, n, 1)).first;
  return it->second;
}

// Args: n, worker count.
void BM_first_last(benchmark::State& state) {
  const Instance& inst = instance(static_cast<std::size_t>(state.range(0)));
  parallel::ThreadScope scope(static_cast<int>(state.range(1)));
  counters::reset();
  for (auto _ : state) benchmark::DoNotOptimize(first_last(inst.red, inst.blue));
  state.counters["ops"] = benchmark::Counter(static_cast<double>(counters::snapshot().total()),
                                             benchmark::Counter::kAvgIterations);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_first_last)
    ->ArgsProduct({benchmark::CreateRange(1 << 7, 1 << 13, 2), {1, 2, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

// The serial reference on the same instances.
void BM_brute_first_last(benchmark::State& state) {
  const Instance& inst = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_first_last(inst.red, inst.blue));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_brute_first_last)->RangeMultiplier(2)->Range(1 << 7, 1 << 11)->Unit(benchmark::kMillisecond);

// Args: segments per set, worker count.
void BM_hausdorff(benchmark::State& state) {
  const SegmentSets s = generate_segments(static_cast<std::size_t>(state.range(0)), 1);
  parallel::ThreadScope scope(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff(s.p, s.q));
}
BENCHMARK(BM_hausdorff)->ArgsProduct({{25, 50, 100}, {1, 8}})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_sampled_hausdorff(benchmark::State& state) {
  const SegmentSets s = generate_segments(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(sampled_directed_hausdorff(s.p, s.q, 1e-3));
}
BENCHMARK(BM_sampled_hausdorff)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
