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
#include <functional>
#include <optional>
#include <string>

#include "pauliprop/circuit.hpp"
#include "pauliprop/surrogate.hpp"

namespace pauliprop {

/// Which sub-process of the noisy rotation a branch took at a layer.
enum class ProcessLabel : std::uint8_t {
  Zero,    // identity qubit, no action
  ZeroZ,   // Z kept with factor D_Z
  ZeroI,   // Z collapsed to I with factor t_Z
  Plus,    // cos child of an X/Y encounter
  Minus,   // sin child of an X/Y encounter
  ZeroX,   // X collapsed to I with factor t_X
  ZeroY,   // Y collapsed to I with factor t_Y
};

enum class BuildMode { Deterministic, MonteCarlo, Exact };

/// Instrumentation record for one noisy-rotation encounter: the surviving
/// children with their process labels and signed factors.
struct SplitEvent {
  std::size_t layer = 0;  // 1-based
  Axis axis = Axis::I;
  std::vector<std::pair<ProcessLabel, double>> children;
};

struct EngineOptions {
  /// Live-branch ceiling for truncated builds; exceeding it raises a
  /// ResourceError naming the budget.
  std::size_t max_live_branches = 1u << 22;
  /// Path-closure ceiling for the exact (untruncated) tree.
  std::size_t max_exact_closures = 1u << 24;
  /// Worker threads for build_mc; 0 means hardware concurrency. Results are
  /// bit-identical for any value.
  std::size_t threads = 1;
  /// Optional split observer (deterministic single-tree modes only).
  std::function<void(const SplitEvent &)> on_split;
};

struct BuildReport {
  Surrogate surrogate;
  BuildMode mode = BuildMode::Deterministic;
  std::int64_t ell = -1;
  /// min over discarded branches of |h(omega)|; absent when nothing was
  /// discarded, in which case the surrogate is exact.
  std::optional<std::uint64_t> r_certificate;
  std::size_t discarded_count = 0;
  std::size_t expanded_branch_count = 0;  // path closures
  std::size_t peak_live_branches = 0;
  std::size_t trees = 0;        // MC only
  std::uint64_t seed = 0;       // MC only
  /// True when every layer channel is exactly amplitude damping; only then
  /// does the deterministic r certificate carry the formal bound.
  bool all_amplitude_damping = false;
  double gamma_min = 0;     // min damping across layers (AD instances)
  double xy_damping_max = 0;  // max over layers of the X/Y damping
  std::string channel_summary;
};

/// Deterministic truncated backpropagation: branches that would split past
/// `ell` are discarded and the minimum |h| over discards is reported.
BuildReport build_deterministic(const Circuit &c, const PauliString &obs,
                                std::size_t ell,
                                const EngineOptions &opts = {});

/// One sampled (nonphysical) tree: Z encounters draw a single child, X/Y
/// encounters either collapse or split into both trig children, with the
/// sampling factors divided out so the estimator stays unbiased.
Surrogate sample_tree(const Circuit &c, const PauliString &obs,
                      std::size_t ell, std::uint64_t tree_seed,
                      const EngineOptions &opts = {});

/// Average of K sampled trees; per-tree seeds are derived as
/// CounterRng::derive(seed, k).
BuildReport build_mc(const Circuit &c, const PauliString &obs, std::size_t ell,
                     std::size_t trees, std::uint64_t seed,
                     const EngineOptions &opts = {});

/// Untruncated tree; the exact Fourier expansion of f.
BuildReport exact_tree(const Circuit &c, const PauliString &obs,
                       const EngineOptions &opts = {});

/// (1 - gamma_min)^(r/2) for deterministic AD reports; 0 when r is absent
/// (the surrogate is exact). Throws on MC reports.
double certificate_bound(const BuildReport &report);

}  // namespace pauliprop
