#include "doctest.h"

#include <vector>

#include "synbench/rng.hpp"

using namespace synbench;

TEST_CASE("same seed, same stream") {
  Rng a(42, 7), b(42, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different streams diverge") {
  Rng a(42, 7), b(42, 8);
  int same = 0;
  for (int i = 0; i < 64; ++i) same += a.next_u64() == b.next_u64() ? 1 : 0;
  CHECK(same == 0);
}

TEST_CASE("uniform01 lies in [0,1)") {
  Rng r(1);
  for (int i = 0; i < 10000; ++i) {
    double u = r.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("below produces every residue") {
  Rng r(3);
  std::vector<int> seen(5, 0);
  for (int i = 0; i < 2000; ++i) ++seen[r.below(5)];
  for (int c : seen) CHECK(c > 200);
}

TEST_CASE("shuffle is a permutation") {
  Rng r(9);
  std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  auto orig = v;
  r.shuffle(v);
  auto sorted = v;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == orig);
}

TEST_CASE("normal mean and spread are sane") {
  Rng r(11);
  double sum = 0, sum2 = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    double x = r.normal();
    sum += x;
    sum2 += x * x;
  }
  CHECK(std::abs(sum / n) < 0.05);
  CHECK(std::abs(sum2 / n - 1.0) < 0.05);
}
