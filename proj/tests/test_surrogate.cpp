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

#include "pauliprop/surrogate.hpp"

#include <cmath>

#include "doctest.h"
#include "pauliprop/errors.hpp"
#include "pauliprop/rng.hpp"

namespace pp = pauliprop;

namespace {

pp::Surrogate random_surrogate(std::size_t m, std::size_t terms,
                               std::uint64_t seed) {
  pp::CounterRng rng(seed);
  pp::Surrogate s;
  s.m = m;
  for (std::size_t t = 0; t < terms; ++t) {
    pp::MonomialKey key;
    for (std::uint32_t layer = 1; layer <= m; ++layer) {
      std::uint64_t d = rng.next_below(3);
      if (d == 0) continue;
      key.emplace_back(layer, d == 1 ? pp::Trig::Cos : pp::Trig::Sin);
    }
    s.add_term(key, 2.0 * rng.next_double() - 1.0);
  }
  return s;
}

}  // namespace

TEST_CASE("evaluate multiplies the tagged trig factors") {
  pp::Surrogate s;
  s.m = 3;
  s.add_term({}, 0.5);
  s.add_term({{1, pp::Trig::Cos}, {3, pp::Trig::Sin}}, 2.0);
  std::vector<double> theta{0.3, 100.0, 1.1};
  double expect = 0.5 + 2.0 * std::cos(0.3) * std::sin(1.1);
  CHECK(pp::evaluate(s, theta) == doctest::Approx(expect).epsilon(1e-15));
  CHECK_THROWS_AS((void)pp::evaluate(s, {0.1}), pp::SchemaError);
}

TEST_CASE("keys must be strictly increasing and in range") {
  pp::Surrogate s;
  s.m = 4;
  CHECK_THROWS_AS(s.add_term({{2, pp::Trig::Cos}, {2, pp::Trig::Sin}}, 1.0),
                  pp::SchemaError);
  CHECK_THROWS_AS(s.add_term({{3, pp::Trig::Cos}, {1, pp::Trig::Sin}}, 1.0),
                  pp::SchemaError);
  CHECK_THROWS_AS(s.add_term({{5, pp::Trig::Cos}}, 1.0), pp::SchemaError);
  CHECK_THROWS_AS(s.add_term({{0, pp::Trig::Cos}}, 1.0), pp::SchemaError);
}

TEST_CASE("combine is termwise linear") {
  pp::Surrogate a, b;
  a.m = b.m = 2;
  a.add_term({}, 1.0);
  a.add_term({{1, pp::Trig::Cos}}, 2.0);
  b.add_term({{1, pp::Trig::Cos}}, -1.0);
  b.add_term({{2, pp::Trig::Sin}}, 4.0);
  pp::Surrogate c = pp::combine(0.5, a, 0.25, b);
  CHECK(c.terms.at({}) == doctest::Approx(0.5));
  CHECK(c.terms.at({{1, pp::Trig::Cos}}) == doctest::Approx(0.75));
  CHECK(c.terms.at({{2, pp::Trig::Sin}}) == doctest::Approx(1.0));
}

TEST_CASE("analytic L2 distance is a metric on sampled surrogates") {
  pp::Surrogate a = random_surrogate(5, 8, 1);
  pp::Surrogate b = random_surrogate(5, 8, 2);
  pp::Surrogate c = random_surrogate(5, 8, 3);
  CHECK(pp::l2_distance(a, a) == 0.0);
  CHECK(pp::l2_distance(a, b) == doctest::Approx(pp::l2_distance(b, a)));
  CHECK(pp::l2_distance(a, c) <=
        pp::l2_distance(a, b) + pp::l2_distance(b, c) + 1e-12);
  CHECK(pp::l2_norm(a) > 0.0);
}

TEST_CASE("analytic L2 matches Monte-Carlo theta integration") {
  // The orthogonality weight 2^-|key| is what makes the sorted-merge formula
  // exact; the empirical integral must agree within its own error bars.
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    pp::Surrogate a = random_surrogate(4, 6, 10 + trial);
    pp::Surrogate b = random_surrogate(4, 6, 20 + trial);
    double analytic = pp::l2_distance(a, b);
    pp::EmpiricalL2 emp = pp::empirical_l2(
        a, [&](const std::vector<double> &theta) { return evaluate(b, theta); },
        40000, 77 + trial);
    CHECK(std::abs(emp.estimate - analytic) <= 4.0 * emp.std_error + 1e-6);
  }
}

TEST_CASE("sampled-tree error bounds have the pinned closed forms") {
  double g = 0.2;
  std::size_t ell = 3, K = 400;
  double delta = 0.1;
  double hoeffding = std::sqrt(2.0 * std::log(2.0 / delta) / double(K));
  CHECK(pp::mc_bound_ad(g, ell, K, delta) ==
        doctest::Approx(std::pow(1 - g, 2.0) + hoeffding).epsilon(1e-12));
  CHECK(pp::mc_bound_general(0.7, ell, K, delta) ==
        doctest::Approx(std::pow(0.7, 4.0) + hoeffding).epsilon(1e-12));
  CHECK_THROWS_AS((void)pp::mc_bound_ad(0.0, 1, 10, 0.1), pp::SchemaError);
  CHECK_THROWS_AS((void)pp::mc_bound_ad(0.1, 1, 10, 1.5), pp::SchemaError);
}

TEST_CASE("surrogate files round trip with metadata") {
  pp::Surrogate s = random_surrogate(6, 10, 42);
  pp::SurrogateMeta meta;
  meta.mode = "deterministic";
  meta.m = 6;
  meta.ell = 3;
  meta.r_certificate = 4;
  meta.circuit_hash = "abc123";
  meta.observable = "ZZI";
  meta.channel_summary = "amplitude_damping:gamma_min=0.1";
  auto [back, bmeta] = pp::surrogate_from_json(pp::surrogate_to_json(s, meta));
  CHECK(back.m == s.m);
  CHECK(back.terms == s.terms);
  CHECK(bmeta.mode == meta.mode);
  CHECK(bmeta.ell == meta.ell);
  REQUIRE(bmeta.r_certificate.has_value());
  CHECK(*bmeta.r_certificate == 4);
  CHECK(bmeta.circuit_hash == meta.circuit_hash);
  CHECK(bmeta.observable == meta.observable);
  CHECK_THROWS_AS((void)pp::surrogate_from_json("{"), pp::SchemaError);
  CHECK_THROWS_AS((void)pp::surrogate_from_json("{\"terms\": []}"),
                  pp::SchemaError);
}
