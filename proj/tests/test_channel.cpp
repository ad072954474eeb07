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

#include "pauliprop/channel.hpp"

#include <array>
#include <cmath>
#include <complex>

#include "doctest.h"
#include "pauliprop/errors.hpp"

namespace pp = pauliprop;
using Cx = std::complex<double>;

namespace {

pp::Mat2 axis_mat(pp::Axis a) {
  const Cx i1(0, 1);
  switch (a) {
    case pp::Axis::I:
      return {1, 0, 0, 1};
    case pp::Axis::X:
      return {0, 1, 1, 0};
    case pp::Axis::Y:
      return {0, -i1, i1, 0};
    case pp::Axis::Z:
      return {1, 0, 0, -1};
  }
  return {};
}

pp::Mat2 dagger(const pp::Mat2 &m) {
  return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

pp::Mat2 add(const pp::Mat2 &a, const pp::Mat2 &b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

/// Kraus-sum adjoint oracle: sum_k K^dagger P K, compared entrywise against
/// t_P I + D_P P. Independent of the channel's own (t, D) bookkeeping.
void check_against_kraus(const pp::NormalFormChannel &ch) {
  REQUIRE(!ch.kraus.empty());
  for (pp::Axis a : {pp::Axis::I, pp::Axis::X, pp::Axis::Y, pp::Axis::Z}) {
    pp::Mat2 acc{0, 0, 0, 0};
    for (const pp::Mat2 &k : ch.kraus) {
      acc = add(acc, pp::mat2_mul(pp::mat2_mul(dagger(k), axis_mat(a)), k));
    }
    auto [ti, di] = pp::adjoint_action(ch, a);
    pp::Mat2 expect = add(pp::mat2_scale(ti, axis_mat(pp::Axis::I)),
                          a == pp::Axis::I ? pp::Mat2{0, 0, 0, 0}
                                           : pp::mat2_scale(di, axis_mat(a)));
    if (a == pp::Axis::I) expect = axis_mat(pp::Axis::I);
    for (int e = 0; e < 4; ++e) {
      CAPTURE(static_cast<int>(a));
      CHECK(std::abs(acc[e] - expect[e]) < 1e-12);
    }
  }
}

/// 4x4 Schroedinger PTM of a normal-form channel acting on Pauli coefficient
/// vectors (c_I, c_X, c_Y, c_Z).
using Ptm = std::array<std::array<double, 4>, 4>;

Ptm ptm_of(const pp::NormalFormChannel &ch) {
  Ptm m{};
  m[0][0] = 1;
  for (int p = 0; p < 3; ++p) {
    m[p + 1][p + 1] = ch.D[p];
    m[p + 1][0] = ch.t[p];
  }
  return m;
}

Ptm ptm_mul(const Ptm &a, const Ptm &b) {
  Ptm out{};
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      for (int j = 0; j < 4; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("constructor channels match their own Kraus sets") {
  check_against_kraus(pp::amplitude_damping(0.19));
  check_against_kraus(pp::amplitude_damping(0.999));
  check_against_kraus(pp::dephasing(0.3));
  check_against_kraus(pp::depolarizing(0.25));
  check_against_kraus(pp::identity_channel());
}

TEST_CASE("amplitude damping has the expected adjoint coefficients") {
  double g = 0.19;
  pp::NormalFormChannel ch = pp::amplitude_damping(g);
  CHECK(ch.D[0] == doctest::Approx(std::sqrt(1 - g)).epsilon(1e-15));
  CHECK(ch.D[1] == doctest::Approx(std::sqrt(1 - g)).epsilon(1e-15));
  CHECK(ch.D[2] == doctest::Approx(1 - g).epsilon(1e-15));
  CHECK(ch.t[0] == 0.0);
  CHECK(ch.t[1] == 0.0);
  CHECK(ch.t[2] == doctest::Approx(g).epsilon(1e-15));
}

TEST_CASE("dephasing damps X and Y by exactly 1 - lam") {
  pp::NormalFormChannel ch = pp::dephasing(0.2);
  CHECK(ch.D[0] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(ch.D[1] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(ch.D[2] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ch.t[2] == 0.0);
}

TEST_CASE("compose matches the 4x4 PTM product and keeps a valid Kraus set") {
  pp::NormalFormChannel a = pp::amplitude_damping(0.1);
  pp::NormalFormChannel b = pp::dephasing(0.2);
  pp::NormalFormChannel c = pp::depolarizing(0.15);

  pp::NormalFormChannel ab = pp::compose(a, b);
  Ptm expect = ptm_mul(ptm_of(b), ptm_of(a));
  Ptm got = ptm_of(ab);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(got[i][j] == doctest::Approx(expect[i][j]).epsilon(1e-12));
    }
  }
  check_against_kraus(ab);

  pp::NormalFormChannel left = pp::compose(pp::compose(a, b), c);
  pp::NormalFormChannel right = pp::compose(a, pp::compose(b, c));
  for (int p = 0; p < 3; ++p) {
    CHECK(left.t[p] == doctest::Approx(right.t[p]).epsilon(1e-12));
    CHECK(left.D[p] == doctest::Approx(right.D[p]).epsilon(1e-12));
  }
}

TEST_CASE("composing two dampings gives the combined damping") {
  auto g = pp::amplitude_damping_gamma(
      pp::compose(pp::amplitude_damping(0.1), pp::amplitude_damping(0.3)));
  REQUIRE(g.has_value());
  CHECK(*g == doctest::Approx(1.0 - 0.9 * 0.7).epsilon(1e-12));
}

TEST_CASE("convex mixtures average the normal form and stay trace preserving") {
  pp::NormalFormChannel mix = pp::convex_combine(
      {0.25, 0.75}, {pp::amplitude_damping(0.1), pp::amplitude_damping(0.3)});
  CHECK(mix.t[2] == doctest::Approx(0.25 * 0.1 + 0.75 * 0.3).epsilon(1e-12));
  CHECK(mix.D[2] == doctest::Approx(0.25 * 0.9 + 0.75 * 0.7).epsilon(1e-12));
  check_against_kraus(mix);
  CHECK_THROWS_AS((void)pp::convex_combine({0.5, 0.6},
                                           {pp::amplitude_damping(0.1),
                                            pp::amplitude_damping(0.3)}),
                  pp::SchemaError);
}

TEST_CASE("validate accepts the constructor channels as admissible") {
  for (const auto &ch :
       {pp::identity_channel(), pp::amplitude_damping(0.19),
        pp::dephasing(0.4), pp::depolarizing(0.3),
        pp::compose(pp::amplitude_damping(0.1), pp::dephasing(0.2))}) {
    pp::ValidityReport rep = pp::validate(ch);
    CAPTURE(ch.label);
    CHECK(rep.pass);
    CHECK(rep.admissible);
  }
}

TEST_CASE("validate rejects an axis bound violation") {
  pp::ValidityReport rep =
      pp::validate(pp::normal_form({0.5, 0, 0}, {0.8, 0.8, 0.8}));
  CHECK_FALSE(rep.axes[0].within_bound);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("a strict saturation on X blocks engine admissibility") {
  // Unitary relabeling of amplitude damping toward |+>; physical, but the
  // saturating axis is X instead of Z.
  double g = 0.2;
  pp::NormalFormChannel ch = pp::normal_form(
      {g, 0, 0}, {1 - g, std::sqrt(1 - g), std::sqrt(1 - g)}, "x_damping");
  pp::ValidityReport rep = pp::validate(ch);
  CHECK(rep.pass);
  CHECK(rep.strict_saturation_count == 1);
  REQUIRE(rep.saturating_axis.has_value());
  CHECK(*rep.saturating_axis == pp::Axis::X);
  CHECK_FALSE(rep.admissible);
}

TEST_CASE("two strict saturations violate the normal-form lemma") {
  pp::ValidityReport rep = pp::validate(
      pp::normal_form({0.3, 0, 0.3}, {0.7, 1.0, 0.7}, "double_saturation"));
  CHECK(rep.strict_saturation_count == 2);
  CHECK_FALSE(rep.saturation_ok);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("xy damping reports the sampled-tree contraction") {
  CHECK(pp::xy_damping(pp::amplitude_damping(0.19)) ==
        doctest::Approx(std::sqrt(0.81)).epsilon(1e-15));
  CHECK(pp::xy_damping(pp::dephasing(0.2)) ==
        doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("constructor parameter ranges are enforced") {
  CHECK_THROWS_AS((void)pp::amplitude_damping(-0.1), pp::SchemaError);
  CHECK_THROWS_AS((void)pp::amplitude_damping(1.1), pp::SchemaError);
  CHECK_THROWS_AS((void)pp::dephasing(2.5), pp::SchemaError);
  CHECK_THROWS_AS((void)pp::depolarizing(-1.0), pp::SchemaError);
}
