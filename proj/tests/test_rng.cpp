#include "doctest.h"
#include "support/rng.hpp"

#include <cmath>
#include <set>
#include <vector>

using coact::Rng;

TEST_CASE("identical seeds give identical streams") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.uniform01() == b.uniform01());
  }
}

TEST_CASE("different seeds diverge") {
  Rng a(1), b(2);
  int same = 0;
  for (int i = 0; i < 100; ++i) {
    if (a.uniform01() == b.uniform01()) ++same;
  }
  CHECK(same < 5);
}

TEST_CASE("uniform01 stays in the half-open unit interval") {
  Rng rng(7);
  for (int i = 0; i < 100000; ++i) {
    const double x = rng.uniform01();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("below covers the whole range and nothing more") {
  Rng rng(9);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 5000; ++i) {
    const auto v = rng.below(7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("chance respects the extremes") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    CHECK(rng.chance(1.0));
    CHECK_FALSE(rng.chance(0.0));
  }
}

TEST_CASE("chance frequency tracks probability") {
  Rng rng(13);
  int hits = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    if (rng.chance(0.3)) ++hits;
  }
  CHECK(std::abs(hits / static_cast<double>(n) - 0.3) < 0.01);
}

TEST_CASE("weighted selection follows the weights") {
  Rng rng(17);
  std::vector<double> weights{1.0, 3.0, 0.0, 6.0};
  std::vector<int> counts(4, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[static_cast<int>(rng.weighted(weights))];
  CHECK(counts[2] == 0);
  CHECK(std::abs(counts[0] / static_cast<double>(n) - 0.1) < 0.01);
  CHECK(std::abs(counts[1] / static_cast<double>(n) - 0.3) < 0.01);
  CHECK(std::abs(counts[3] / static_cast<double>(n) - 0.6) < 0.01);
}

TEST_CASE("derive produces stable, index-separated child seeds") {
  const auto a = Rng::derive(5, 1);
  const auto b = Rng::derive(5, 2);
  CHECK(a == Rng::derive(5, 1));
  CHECK(a != b);
  // Streams from sibling seeds should not correlate.
  Rng ra(a), rb(b);
  int same = 0;
  for (int i = 0; i < 100; ++i) {
    if (ra.below(1000) == rb.below(1000)) ++same;
  }
  CHECK(same < 5);
}
