#pragma once

#include <omp.h>

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <parallel/algorithm>
#include <vector>

namespace rbsect::parallel {

/// Worker count used by every bulk phase. Defaults to RB_THREADS when set,
/// otherwise to the OpenMP default.
int threads();
void set_threads(int k);

/// Scoped override of the worker count.
class ThreadScope {
 public:
  explicit ThreadScope(int k) : saved_(threads()) { set_threads(k); }
  ~ThreadScope() { set_threads(saved_); }
  ThreadScope(const ThreadScope&) = delete;
  ThreadScope& operator=(const ThreadScope&) = delete;

 private:
  int saved_;
};

/// Runs f(i) for i in [0, n). Iterations must write disjoint slots.
template <class F>
void parallel_for(std::size_t n, F&& f, std::size_t grain = 64) {
  const int k = threads();
  if (k <= 1 || n <= grain || omp_in_parallel()) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
#pragma omp parallel for schedule(dynamic, 16) num_threads(k)
  for (std::size_t i = 0; i < n; ++i) f(i);
}

/// Runs f(i, out) for i in [0, n), where f appends any number of results
/// to out. Results come back in index order; chunking is fixed, so the
/// output does not depend on the worker count.
template <class T, class F>
std::vector<T> parallel_collect(std::size_t n, F&& f, std::size_t chunk = 256) {
  const std::size_t nchunks = (n + chunk - 1) / chunk;
  std::vector<std::vector<T>> parts(nchunks);
  parallel_for(
      nchunks,
      [&](std::size_t c) {
        const std::size_t end = std::min(n, (c + 1) * chunk);
        for (std::size_t i = c * chunk; i < end; ++i) f(i, parts[c]);
      },
      1);
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<T> out;
  out.reserve(total);
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

/// Sort with a strict total order, so the result does not depend on the
/// worker count.
template <class It, class Cmp>
void parallel_sort(It first, It last, Cmp cmp) {
  const auto n = static_cast<std::size_t>(last - first);
  const int k = threads();
  if (k <= 1 || n < 8192 || omp_in_parallel()) {
    std::sort(first, last, cmp);
    return;
  }
  __gnu_parallel::sort(first, last, cmp, __gnu_parallel::multiway_mergesort_tag(k));
}

/// Exclusive prefix sum of sizes; returns a vector of length n + 1.
template <class Size>
std::vector<std::size_t> offsets_from_counts(const std::vector<Size>& counts) {
  std::vector<std::size_t> off(counts.size() + 1, 0);
  for (std::size_t i = 0; i < counts.size(); ++i) off[i + 1] = off[i] + counts[i];
  return off;
}

}  // namespace rbsect::parallel
