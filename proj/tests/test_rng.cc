#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "srsim/rng.h"

using namespace srsim;

TEST_CASE("same seed reproduces the identical stream") {
  Rng a(12345);
  Rng b(12345);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("nearby seeds give unrelated streams") {
  Rng a(0);
  Rng b(1);
  int equal = 0;
  for (int i = 0; i < 1000; ++i) {
    if (a.next_u64() == b.next_u64()) {
      ++equal;
    }
  }
  CHECK(equal == 0);
}

TEST_CASE("derived streams are stable and distinct") {
  const uint64_t root = 99;
  CHECK(derive_seed(root, streams::kDeployment) ==
        derive_seed(root, streams::kDeployment));
  std::set<uint64_t> seeds;
  for (uint64_t id = 0; id < 100; ++id) {
    seeds.insert(derive_seed(root, id));
  }
  CHECK(seeds.size() == 100);
}

TEST_CASE("uniform01 lies in [0,1) with mean near one half") {
  Rng rng(7);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::fabs(sum / n - 0.5) < 0.005);
}

TEST_CASE("below(n) is bounded and covers all values") {
  Rng rng(11);
  std::set<uint32_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const uint32_t v = rng.below(12);
    REQUIRE(v < 12);
    seen.insert(v);
  }
  CHECK(seen.size() == 12);
}

TEST_CASE("normal draws match the requested moments") {
  Rng rng(5);
  const int n = 200000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal(9.5, 2.5);
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(std::fabs(mean - 9.5) < 0.05);
  CHECK(std::fabs(std::sqrt(var) - 2.5) < 0.05);
}
