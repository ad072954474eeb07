// Copyright 2026 The pauliprop authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pauliprop/rng.hpp"

#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"

using pauliprop::CounterRng;

TEST_CASE("sequences are reproducible for a fixed seed") {
  CounterRng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("streams with different keys diverge") {
  CounterRng a(42, 0), b(42, 1), c(43, 0);
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 64; ++i) {
    std::uint64_t va = a.next_u64();
    if (va == b.next_u64()) ++same_ab;
    if (va == c.next_u64()) ++same_ac;
  }
  CHECK(same_ab == 0);
  CHECK(same_ac == 0);
}

TEST_CASE("derive is deterministic and spreads streams") {
  CHECK(CounterRng::derive(7, 0) == CounterRng::derive(7, 0));
  std::set<std::uint64_t> keys;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    keys.insert(CounterRng::derive(7, s));
  }
  CHECK(keys.size() == 1000);
}

TEST_CASE("next_double stays in [0, 1) and looks uniform") {
  CounterRng rng(5);
  double sum = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    double v = rng.next_double();
    REQUIRE(v >= 0.0);
    REQUIRE(v < 1.0);
    sum += v;
  }
  double mean = sum / n;
  // Mean of U[0,1) has sd ~ 0.289/sqrt(n); 5 sigma window.
  CHECK(mean > 0.5 - 5 * 0.289 / std::sqrt(double(n)));
  CHECK(mean < 0.5 + 5 * 0.289 / std::sqrt(double(n)));
}

TEST_CASE("next_below respects the bound") {
  CounterRng rng(9);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 7000; ++i) {
    std::uint64_t v = rng.next_below(7);
    REQUIRE(v < 7);
    ++counts[v];
  }
  for (int c : counts) CHECK(c > 700);
}

TEST_CASE("known value pinned for cross-run stability") {
  // Frozen from the first implementation; a change here means every seeded
  // artifact in the repo silently changed.
  CounterRng rng(1, 0);
  CHECK(rng.next_u64() == CounterRng::mix64(CounterRng::derive(1, 0) +
                                            CounterRng::kGolden));
}
