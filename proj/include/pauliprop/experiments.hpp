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

#include <cstdint>
#include <string>
#include <vector>

#include "pauliprop/circuit.hpp"
#include "pauliprop/engine.hpp"

namespace pauliprop {

/// Shared configuration for the experiment drivers. Unused fields are
/// ignored by drivers that do not need them.
struct ExperimentConfig {
  std::string family = "qaoa";  // "qaoa" | "random"
  std::size_t nodes = 8;        // qaoa family
  std::size_t rounds = 1;       // qaoa family
  std::size_t max_n = 4;        // random family: qubits drawn from [2, max_n]
  std::size_t max_m = 8;        // random family: rotations from [1, max_m]
  std::size_t fixed_n = 0;      // nonzero pins the qubit count exactly
  std::vector<double> gammas = {0.1};
  /// Optional explicit channel JSON; overrides gammas when nonempty.
  std::string channel_json;
  std::vector<std::int64_t> ells = {0, 1, 2, 3, 4};
  std::size_t trees = 500;   // K for MC builds
  double delta = 0.1;
  std::size_t repeats = 1;   // R, independent MC repetitions
  std::size_t instances = 10;
  std::size_t samples = 100000;  // theta samples for empirical L2
  std::uint64_t seed = 1;
  std::size_t threads = 1;  // 0 = hardware concurrency

  void check() const;
};

ExperimentConfig config_from_json(const std::string &text);
/// Canonical serialization; also the basis of the config hash stamped into
/// every CSV header.
std::string config_to_json(const ExperimentConfig &cfg);
std::string config_hash(const ExperimentConfig &cfg);

struct ExperimentResult {
  std::string csv;  // first line: "# config=<hash>"
  bool pass = true;
  std::string note;
};

/// One generated test instance: circuit, observable and the AD gamma used
/// (0 when an explicit channel overrides it).
struct RandomInstance {
  Circuit circuit;
  PauliString observable{1};
  double gamma = 0;
};

/// Deterministic random instance: n in [2, max_n] (or exactly fixed_n when
/// nonzero), m in [1, max_m], gamma drawn from `gammas`, a random
/// non-identity observable.
RandomInstance make_random_instance(std::size_t max_n, std::size_t max_m,
                                    const std::vector<double> &gammas,
                                    std::uint64_t seed,
                                    const NormalFormChannel *channel_override =
                                        nullptr,
                                    std::size_t fixed_n = 0);

/// r versus the cut-off on QAOA over random 3-regular graphs, with per-ell
/// mean/min summaries and a least-squares slope of mean r. Passes when the
/// slope is positive; monotonicity exceptions are recorded, not asserted.
ExperimentResult run_r_vs_ell(const ExperimentConfig &cfg);

/// Per instance and cut-off: empirical landscape error of the truncated
/// surrogate against the exact expansion versus the certificate value.
/// Passes when every row satisfies delta <= bound + 4 standard errors.
ExperimentResult run_certificate_validation(const ExperimentConfig &cfg);

/// R independent MC builds per instance; fraction of repeats whose exact L2
/// error satisfies the sampled-tree bound. Passes when the fraction is at
/// least 1 - delta - 0.05 for every instance.
ExperimentResult run_mc_validation(const ExperimentConfig &cfg);

/// Build-time scaling in ell (fixed instance) and in m (fixed ell).
/// Passes when mid-range per-unit-ell time ratios stay <= 3; the m sweep is
/// informational.
ExperimentResult run_scaling(const ExperimentConfig &cfg);

}  // namespace pauliprop
