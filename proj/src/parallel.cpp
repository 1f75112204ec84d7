#include "rbsect/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace rbsect::parallel {
namespace {

int initial_threads() {
  if (const char* env = std::getenv("RB_THREADS")) {
    try {
      const int k = std::stoi(env);
      if (k > 0) return k;
    } catch (...) {
    }
  }
  return std::max(1, omp_get_max_threads());
}

std::atomic<int>& current() {
  static std::atomic<int> k{initial_threads()};
  return k;
}

}  // namespace

int threads() { return current().load(std::memory_order_relaxed); }

void set_threads(int k) { current().store(std::max(1, k), std::memory_order_relaxed); }

}  // namespace rbsect::parallel
