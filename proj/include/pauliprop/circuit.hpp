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

#include "pauliprop/channel.hpp"
#include "pauliprop/graph.hpp"
#include "pauliprop/pauli.hpp"

namespace pauliprop {

/// One alternating block, in forward (Schroedinger) order: the Rz rotation,
/// then noise on the rotation qubit, then a Clifford gate list.
struct Layer {
  NormalFormChannel noise;
  std::uint32_t rotation_qubit = 0;
  CliffordLayer clifford;
};

struct Circuit {
  std::size_t n = 1;
  CliffordLayer initial_clifford;
  std::vector<Layer> layers;

  std::size_t num_rotations() const { return layers.size(); }
  /// Structural checks: qubit bounds, channel validity, Z-or-none saturation.
  void check() const;
};

using AngleVector = std::vector<double>;

/// Circuit file JSON round trip; canonical form has sorted keys and
/// shortest round-trip float literals.
std::string circuit_to_json(const Circuit &c);
Circuit circuit_from_json(const std::string &text);
Circuit load_circuit(const std::string &path);
void save_circuit(const Circuit &c, const std::string &path);

/// FNV-1a over the canonical serialization; hex string for file metadata.
std::string circuit_hash(const Circuit &c);

std::string channel_to_json(const NormalFormChannel &c);
NormalFormChannel channel_from_json_text(const std::string &text);

/// QAOA on a graph: C0 = H everywhere; per round, per edge (i,j) a cost term
/// CX(i,j) Rz(j) CX(i,j), then per qubit a mixer H Rz H. Every rotation has
/// its own angle index; m = rounds * (|E| + nodes).
Circuit qaoa_circuit(const Graph &g, std::size_t rounds,
                     const NormalFormChannel &noise);

struct RandomCircuitOptions {
  /// Target gates per Clifford layer, as a multiple of n.
  double gate_density = 1.0;
  /// Fraction of gates drawn from the two-qubit set (needs n >= 2).
  double two_qubit_fraction = 0.5;
  /// Prepend one of the 24 single-qubit Cliffords on the rotation qubit to
  /// each layer's gate list.
  bool single_qubit_random_cliffords = false;
};

Circuit random_circuit(std::size_t n, std::size_t m,
                       const NormalFormChannel &noise, std::uint64_t seed,
                       const RandomCircuitOptions &opts = {});

/// Gate sequences for the 24 single-qubit Cliffords, as words over {H, S};
/// entry 0 is the empty word. Order is fixed (breadth-first closure).
const std::vector<std::vector<GateKind>> &single_qubit_clifford_words();

}  // namespace pauliprop
