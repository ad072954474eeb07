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

#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "pauliprop/pauli.hpp"

namespace pauliprop {

/// Row-major 2x2 complex matrix; enough linear algebra for Kraus bookkeeping.
using Mat2 = std::array<std::complex<double>, 4>;

Mat2 mat2_mul(const Mat2 &a, const Mat2 &b);
Mat2 mat2_scale(std::complex<double> s, const Mat2 &m);

/// Tolerance for all channel validity comparisons.
inline constexpr double kChannelTol = 1e-9;

/// Single-qubit channel in diagonal normal form. The adjoint maps
/// P -> t_P I + D_P P for P in {X, Y, Z} and fixes I.
///
/// Component order of t and D is (X, Y, Z) throughout.
struct NormalFormChannel {
  std::array<double, 3> t{0, 0, 0};
  std::array<double, 3> D{1, 1, 1};
  std::string label = "identity";
  /// Kraus operators, present when the channel was built from constructors
  /// with known Kraus sets (and their compositions/mixtures). Raw (t, D)
  /// channels have none.
  std::vector<Mat2> kraus;
  /// Canonical JSON of the constructor call, kept so circuit files round-trip
  /// with full provenance. Set by every constructor in this header.
  std::string spec;

  double t_of(Axis a) const;
  double D_of(Axis a) const;
};

NormalFormChannel identity_channel();
NormalFormChannel amplitude_damping(double gamma);
NormalFormChannel depolarizing(double p);
/// Parameterized so the PTM damping on X and Y is exactly 1 - lam.
NormalFormChannel dephasing(double lam);
/// Raw normal-form channel; carries no Kraus set.
NormalFormChannel normal_form(const std::array<double, 3> &t,
                              const std::array<double, 3> &D,
                              const std::string &label = "normal_form");

/// Schroedinger composition: `second` applied after `first`.
NormalFormChannel compose(const NormalFormChannel &first,
                          const NormalFormChannel &second);

NormalFormChannel convex_combine(const std::vector<double> &weights,
                                 const std::vector<NormalFormChannel> &chans);

struct AxisCheck {
  double value = 0;       // |D_P| + |t_P|
  bool within_bound = false;
  bool saturated = false;  // |1 - value| <= tol
  bool benign = false;     // saturated with t_P = 0 (unital, identity-like)
};

struct ValidityReport {
  std::array<AxisCheck, 3> axes;  // X, Y, Z
  int saturation_count = 0;        // all saturated axes
  int strict_saturation_count = 0; // saturated axes with t_P != 0
  double worst_sampled_constraint = 0;
  bool axis_bounds_ok = false;
  bool saturation_ok = false;   // strict saturations <= 1
  bool sampled_ok = false;
  bool pass = false;
  /// The strictly saturating axis if there is exactly one, else nullopt.
  std::optional<Axis> saturating_axis;
  /// Engine admissibility: strictly saturating axis is Z or none.
  bool admissible = false;
};

/// Checks the normal-form constraints: per-axis |D_P| + |t_P| <= 1, at most
/// one strict saturation, and the full unit-vector constraint
///   sum b_P^2 |D_P| + sum |b_P t_P| <= 1
/// at the 3 axes plus 256 deterministically sampled unit vectors b.
ValidityReport validate(const NormalFormChannel &c);

/// Adjoint action on an axis: returns (identity_coeff, same_axis_coeff).
/// I maps to (1, 1), encoding 1 * I.
std::pair<double, double> adjoint_action(const NormalFormChannel &c, Axis a);

/// True when (t, D) equals the amplitude-damping pattern
/// t = (0, 0, g), D = (sqrt(1-g), sqrt(1-g), 1-g) within tolerance.
/// Returns g on success.
std::optional<double> amplitude_damping_gamma(const NormalFormChannel &c);

/// max over P in {X, Y} of |D_P| + |t_P|; the per-split contraction of the
/// sampled-tree estimator for general channels.
double xy_damping(const NormalFormChannel &c);

}  // namespace pauliprop
