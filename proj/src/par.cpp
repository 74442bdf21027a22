#include "synbench/par.hpp"

#include <atomic>

#include <omp.h>

namespace synbench::par {

namespace {
std::atomic<int> g_threads{0};  // 0 = not set yet, use omp default
}

int threads() {
  int t = g_threads.load(std::memory_order_relaxed);
  if (t <= 0) return omp_get_max_threads();
  return t;
}

void set_threads(int t) { g_threads.store(t, std::memory_order_relaxed); }

}  // namespace synbench::par
