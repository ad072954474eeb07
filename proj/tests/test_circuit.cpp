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

#include "pauliprop/circuit.hpp"

#include <cmath>
#include <set>
#include <string>

#include "doctest.h"
#include "pauliprop/errors.hpp"
#include "pauliprop/graph.hpp"

namespace pp = pauliprop;

TEST_CASE("random regular graphs have the requested degree") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    pp::Graph g = pp::random_regular_graph(10, 3, seed);
    CHECK(g.edges.size() == 15);
    for (std::size_t d : g.degrees()) CHECK(d == 3);
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (auto [a, b] : g.edges) {
      CHECK(a < b);
      CHECK(seen.insert({a, b}).second);
    }
  }
  CHECK_THROWS_AS((void)pp::random_regular_graph(5, 3, 1), pp::SchemaError);
}

TEST_CASE("graph text format round trips") {
  pp::Graph g = pp::random_regular_graph(8, 3, 7);
  pp::Graph back = pp::parse_graph(pp::format_graph(g));
  CHECK(back.nodes == g.nodes);
  CHECK(back.edges == g.edges);
}

TEST_CASE("qaoa circuit has the alternating-form layer count") {
  pp::Graph g = pp::random_regular_graph(8, 3, 5);
  for (std::size_t rounds : {1u, 2u}) {
    pp::Circuit c = pp::qaoa_circuit(g, rounds, pp::amplitude_damping(0.1));
    CHECK(c.n == 8);
    CHECK(c.num_rotations() == rounds * (g.edges.size() + g.nodes));
    CHECK(c.initial_clifford.gates.size() >= g.nodes);
  }
}

TEST_CASE("circuit JSON round trips and hashes stably") {
  pp::Graph g = pp::random_regular_graph(6, 3, 2);
  pp::Circuit c = pp::qaoa_circuit(
      g, 1, pp::compose(pp::amplitude_damping(0.1), pp::dephasing(0.2)));
  std::string text = pp::circuit_to_json(c);
  pp::Circuit back = pp::circuit_from_json(text);
  CHECK(pp::circuit_to_json(back) == text);
  CHECK(pp::circuit_hash(back) == pp::circuit_hash(c));
  CHECK(back.n == c.n);
  CHECK(back.num_rotations() == c.num_rotations());
  CHECK(back.layers[0].rotation_qubit == c.layers[0].rotation_qubit);
  CHECK(!back.layers[0].noise.kraus.empty());
}

TEST_CASE("schema errors name the offending field") {
  CHECK_THROWS_WITH_AS((void)pp::circuit_from_json("{\"n\": 2}"),
                       doctest::Contains("initial_clifford"),
                       pp::SchemaError);
  std::string bad_rot =
      "{\"n\": 2, \"initial_clifford\": [], \"layers\": ["
      "{\"noise\": {\"type\": \"amplitude_damping\", \"gamma\": 0.1},"
      " \"rotation_qubit\": 5, \"clifford\": []}]}";
  CHECK_THROWS_WITH_AS((void)pp::circuit_from_json(bad_rot),
                       doctest::Contains("rotation_qubit"), pp::SchemaError);
  std::string bad_gate =
      "{\"n\": 2, \"initial_clifford\": [{\"gate\": \"CX\", \"qubits\": [0]}],"
      " \"layers\": []}";
  CHECK_THROWS_AS((void)pp::circuit_from_json(bad_gate), pp::SchemaError);
}

TEST_CASE("non-Z saturating noise is rejected as inadmissible") {
  double g = 0.2;
  pp::Circuit c;
  c.n = 1;
  pp::Layer layer;
  layer.noise = pp::normal_form(
      {g, 0, 0}, {1 - g, std::sqrt(1 - g), std::sqrt(1 - g)}, "x_damping");
  c.layers.push_back(layer);
  CHECK_THROWS_AS(c.check(), pp::AdmissibilityError);
}

TEST_CASE("channel JSON round trips through the constructor specs") {
  pp::NormalFormChannel ch =
      pp::compose(pp::amplitude_damping(0.1), pp::dephasing(0.2));
  pp::NormalFormChannel back =
      pp::channel_from_json_text(pp::channel_to_json(ch));
  for (int i = 0; i < 3; ++i) {
    CHECK(back.t[i] == doctest::Approx(ch.t[i]).epsilon(1e-15));
    CHECK(back.D[i] == doctest::Approx(ch.D[i]).epsilon(1e-15));
  }
  CHECK(back.kraus.size() == ch.kraus.size());
}

TEST_CASE("there are exactly 24 single-qubit Clifford words") {
  const auto &words = pp::single_qubit_clifford_words();
  REQUIRE(words.size() == 24);
  // Distinctness by conjugation action on X and Z.
  std::set<std::string> actions;
  for (const auto &word : words) {
    pp::CliffordLayer layer;
    for (pp::GateKind k : word) {
      layer.gates.push_back(pp::CliffordGate::one(k, 0));
    }
    pp::PauliString x = pp::parse_pauli("X");
    pp::PauliString z = pp::parse_pauli("Z");
    actions.insert(pp::format_pauli(pp::conjugate_layer(x, layer)) + "|" +
                   pp::format_pauli(pp::conjugate_layer(z, layer)));
  }
  CHECK(actions.size() == 24);
}

TEST_CASE("random circuits are seed-deterministic") {
  pp::RandomCircuitOptions opts;
  opts.single_qubit_random_cliffords = true;
  pp::Circuit a = pp::random_circuit(4, 8, pp::amplitude_damping(0.1), 9, opts);
  pp::Circuit b = pp::random_circuit(4, 8, pp::amplitude_damping(0.1), 9, opts);
  pp::Circuit c =
      pp::random_circuit(4, 8, pp::amplitude_damping(0.1), 10, opts);
  CHECK(pp::circuit_to_json(a) == pp::circuit_to_json(b));
  CHECK(pp::circuit_to_json(a) != pp::circuit_to_json(c));
}
