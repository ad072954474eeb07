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

#include "pauliprop/circuit.hpp"

namespace pauliprop {

/// Dense qubit limits for the two brute-force oracles. Past these the memory
/// and time blow up; callers get a ResourceError instead of a hang.
inline constexpr std::size_t kPtmOracleMaxQubits = 7;
inline constexpr std::size_t kDensityOracleMaxQubits = 6;

/// Pauli-transfer-matrix oracle: evolves the observable backwards as a dense
/// 4^n real vector over the Pauli basis and reads off the diagonal mass.
/// Exact (up to float roundoff) for every normal-form channel; no Kraus set
/// required.
double ptm_expectation(const Circuit &c, const PauliString &obs,
                       const AngleVector &theta);

struct DensityOracleOptions {
  /// Verify trace preservation after every channel and positivity of the
  /// final state; failures throw AdmissibilityError.
  bool check_physical = true;
  double tol = 1e-8;
};

/// Density-matrix oracle: simulates the 2^n density matrix forward through
/// Kraus channels and unitaries, with Rz(theta) = diag(e^{i theta/2},
/// e^{-i theta/2}). Requires every layer channel to carry a Kraus set.
double density_expectation(const Circuit &c, const PauliString &obs,
                           const AngleVector &theta,
                           const DensityOracleOptions &opts = {});

}  // namespace pauliprop
