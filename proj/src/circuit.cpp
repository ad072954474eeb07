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
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "pauliprop/errors.hpp"
#include "pauliprop/rng.hpp"

namespace pauliprop {

using nlohmann::json;

void Circuit::check() const {
  if (n == 0) throw SchemaError("circuit: n must be >= 1");
  check_layer_bounds(initial_clifford, n);
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const Layer &layer = layers[i];
    std::string where = "layers[" + std::to_string(i) + "]";
    if (layer.rotation_qubit >= n) {
      throw SchemaError("circuit: " + where + ".rotation_qubit = " +
                        std::to_string(layer.rotation_qubit) +
                        " out of range for n=" + std::to_string(n));
    }
    check_layer_bounds(layer.clifford, n);
    ValidityReport rep = validate(layer.noise);
    if (!rep.pass) {
      throw SchemaError("circuit: " + where + ".noise fails normal-form "
                        "validity");
    }
    if (!rep.admissible) {
      throw AdmissibilityError("circuit: " + where + ".noise saturates on a "
                               "non-Z axis");
    }
  }
}

namespace {

json gate_to_json(const CliffordGate &g) {
  json q = json::array({g.q0});
  if (gate_is_two_qubit(g.kind)) q.push_back(g.q1);
  return json{{"gate", gate_name(g.kind)}, {"qubits", q}};
}

CliffordGate gate_from_json(const json &j, const std::string &where) {
  if (!j.is_object() || !j.contains("gate") || !j.contains("qubits")) {
    throw SchemaError("circuit: " + where + " must be {gate, qubits}");
  }
  GateKind kind = gate_from_name(j.at("gate").get<std::string>());
  const json &q = j.at("qubits");
  std::size_t want = gate_is_two_qubit(kind) ? 2 : 1;
  if (!q.is_array() || q.size() != want) {
    throw SchemaError("circuit: " + where + ".qubits needs " +
                      std::to_string(want) + " entries");
  }
  CliffordGate g;
  g.kind = kind;
  g.q0 = q.at(0).get<std::uint32_t>();
  g.q1 = want == 2 ? q.at(1).get<std::uint32_t>() : g.q0;
  return g;
}

json layer_gates_to_json(const CliffordLayer &layer) {
  json out = json::array();
  for (const auto &g : layer.gates) out.push_back(gate_to_json(g));
  return out;
}

CliffordLayer layer_gates_from_json(const json &j, const std::string &where) {
  if (!j.is_array()) {
    throw SchemaError("circuit: " + where + " must be a gate array");
  }
  CliffordLayer layer;
  for (std::size_t i = 0; i < j.size(); ++i) {
    layer.gates.push_back(
        gate_from_json(j.at(i), where + "[" + std::to_string(i) + "]"));
  }
  return layer;
}

NormalFormChannel channel_from_json(const json &j, const std::string &where) {
  if (!j.is_object() || !j.contains("type")) {
    throw SchemaError("circuit: " + where + " must carry a \"type\"");
  }
  std::string type = j.at("type").get<std::string>();
  try {
    if (type == "identity") return identity_channel();
    if (type == "amplitude_damping") {
      return amplitude_damping(j.at("gamma").get<double>());
    }
    if (type == "depolarizing") return depolarizing(j.at("p").get<double>());
    if (type == "dephasing") return dephasing(j.at("lam").get<double>());
    if (type == "normal_form") {
      return normal_form(j.at("t").get<std::array<double, 3>>(),
                         j.at("D").get<std::array<double, 3>>());
    }
    if (type == "compose") {
      return compose(channel_from_json(j.at("first"), where + ".first"),
                     channel_from_json(j.at("second"), where + ".second"));
    }
    if (type == "mixture") {
      std::vector<NormalFormChannel> chans;
      const json &cj = j.at("channels");
      for (std::size_t i = 0; i < cj.size(); ++i) {
        chans.push_back(channel_from_json(
            cj.at(i), where + ".channels[" + std::to_string(i) + "]"));
      }
      return convex_combine(j.at("weights").get<std::vector<double>>(), chans);
    }
  } catch (const json::exception &e) {
    throw SchemaError("circuit: " + where + ": " + e.what());
  }
  throw SchemaError("circuit: " + where + ": unknown channel type \"" + type +
                    "\"");
}

}  // namespace

std::string channel_to_json(const NormalFormChannel &c) { return c.spec; }

NormalFormChannel channel_from_json_text(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception &e) {
    throw SchemaError(std::string("channel: bad JSON: ") + e.what());
  }
  return channel_from_json(j, "channel");
}

std::string circuit_to_json(const Circuit &c) {
  json layers = json::array();
  for (const auto &layer : c.layers) {
    layers.push_back(json{{"clifford", layer_gates_to_json(layer.clifford)},
                          {"noise", json::parse(layer.noise.spec)},
                          {"rotation_qubit", layer.rotation_qubit}});
  }
  json j{{"initial_clifford", layer_gates_to_json(c.initial_clifford)},
         {"layers", layers},
         {"n", c.n}};
  return j.dump();
}

Circuit circuit_from_json(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception &e) {
    throw SchemaError(std::string("circuit: bad JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("layers") ||
      !j.contains("initial_clifford")) {
    throw SchemaError("circuit: need keys n, initial_clifford, layers");
  }
  Circuit c;
  try {
    c.n = j.at("n").get<std::size_t>();
  } catch (const json::exception &e) {
    throw SchemaError(std::string("circuit: n: ") + e.what());
  }
  c.initial_clifford =
      layer_gates_from_json(j.at("initial_clifford"), "initial_clifford");
  const json &lj = j.at("layers");
  if (!lj.is_array()) throw SchemaError("circuit: layers must be an array");
  for (std::size_t i = 0; i < lj.size(); ++i) {
    std::string where = "layers[" + std::to_string(i) + "]";
    const json &e = lj.at(i);
    if (!e.is_object() || !e.contains("noise") ||
        !e.contains("rotation_qubit") || !e.contains("clifford")) {
      throw SchemaError("circuit: " + where +
                        " needs {noise, rotation_qubit, clifford}");
    }
    Layer layer;
    layer.noise = channel_from_json(e.at("noise"), where + ".noise");
    try {
      layer.rotation_qubit = e.at("rotation_qubit").get<std::uint32_t>();
    } catch (const json::exception &ex) {
      throw SchemaError("circuit: " + where + ".rotation_qubit: " + ex.what());
    }
    layer.clifford =
        layer_gates_from_json(e.at("clifford"), where + ".clifford");
    c.layers.push_back(std::move(layer));
  }
  c.check();
  return c;
}

Circuit load_circuit(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open circuit file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return circuit_from_json(buf.str());
}

void save_circuit(const Circuit &c, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write circuit file: " + path);
  out << circuit_to_json(c) << '\n';
}

std::string circuit_hash(const Circuit &c) {
  std::string s = circuit_to_json(c);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

namespace {

/// Incremental builder for the alternating form: gates seen before the first
/// rotation land in C0; afterwards they extend the latest layer's Clifford.
class AlternatingBuilder {
 public:
  explicit AlternatingBuilder(std::size_t n) { circuit_.n = n; }

  void add_gate(const CliffordGate &g) {
    if (circuit_.layers.empty()) {
      circuit_.initial_clifford.gates.push_back(g);
    } else {
      circuit_.layers.back().clifford.gates.push_back(g);
    }
  }

  void add_noisy_rotation(std::uint32_t q, const NormalFormChannel &noise) {
    Layer layer;
    layer.noise = noise;
    layer.rotation_qubit = q;
    circuit_.layers.push_back(std::move(layer));
  }

  Circuit take() {
    circuit_.check();
    return std::move(circuit_);
  }

 private:
  Circuit circuit_;
};

}  // namespace

Circuit qaoa_circuit(const Graph &g, std::size_t rounds,
                     const NormalFormChannel &noise) {
  if (rounds < 1) throw SchemaError("qaoa_circuit: rounds must be >= 1");
  if (g.nodes == 0) throw SchemaError("qaoa_circuit: empty graph");
  AlternatingBuilder b(g.nodes);
  for (std::uint32_t q = 0; q < g.nodes; ++q) {
    b.add_gate(CliffordGate::one(GateKind::H, q));
  }
  for (std::size_t r = 0; r < rounds; ++r) {
    for (const auto &[i, j] : g.edges) {
      b.add_gate(CliffordGate::two(GateKind::CX, i, j));
      b.add_noisy_rotation(j, noise);
      b.add_gate(CliffordGate::two(GateKind::CX, i, j));
    }
    for (std::uint32_t q = 0; q < g.nodes; ++q) {
      b.add_gate(CliffordGate::one(GateKind::H, q));
      b.add_noisy_rotation(q, noise);
      b.add_gate(CliffordGate::one(GateKind::H, q));
    }
  }
  return b.take();
}

const std::vector<std::vector<GateKind>> &single_qubit_clifford_words() {
  static const std::vector<std::vector<GateKind>> words = [] {
    // Breadth-first closure of <H, S>; a Clifford is identified by its
    // conjugation action on X and Z.
    auto action_key = [](const std::vector<GateKind> &word) {
      CliffordLayer layer;
      for (GateKind k : word) layer.gates.push_back(CliffordGate::one(k, 0));
      PauliString x = parse_pauli("X");
      PauliString z = parse_pauli("Z");
      PauliString ix = conjugate_layer(x, layer);
      PauliString iz = conjugate_layer(z, layer);
      return format_pauli(ix) + "|" + format_pauli(iz);
    };
    std::vector<std::vector<GateKind>> out;
    std::map<std::string, bool> seen;
    out.push_back({});
    seen[action_key({})] = true;
    for (std::size_t head = 0; head < out.size() && out.size() < 24; ++head) {
      for (GateKind k : {GateKind::H, GateKind::S}) {
        std::vector<GateKind> next = out[head];
        next.push_back(k);
        std::string key = action_key(next);
        if (!seen[key]) {
          seen[key] = true;
          out.push_back(next);
        }
      }
    }
    return out;
  }();
  return words;
}

Circuit random_circuit(std::size_t n, std::size_t m,
                       const NormalFormChannel &noise, std::uint64_t seed,
                       const RandomCircuitOptions &opts) {
  if (n < 1 || m < 1) throw SchemaError("random_circuit: need n, m >= 1");
  CounterRng rng(seed, /*stream=*/0x63697263);
  const auto &cliffords = single_qubit_clifford_words();
  // Integer thresholds keep structural decisions float-free.
  const std::uint64_t two_qubit_permille =
      static_cast<std::uint64_t>(std::llround(opts.two_qubit_fraction * 1000));
  const std::size_t gates_per_layer = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(opts.gate_density * n)));
  static constexpr GateKind kSingle[] = {GateKind::H, GateKind::S,
                                         GateKind::Sdg, GateKind::X,
                                         GateKind::Y, GateKind::Z};
  static constexpr GateKind kDouble[] = {GateKind::CX, GateKind::CZ,
                                         GateKind::SWAP};

  Circuit c;
  c.n = n;
  for (std::size_t i = 0; i < m; ++i) {
    Layer layer;
    layer.noise = noise;
    layer.rotation_qubit = static_cast<std::uint32_t>(rng.next_below(n));
    if (opts.single_qubit_random_cliffords) {
      const auto &word = cliffords[rng.next_below(cliffords.size())];
      for (GateKind k : word) {
        layer.clifford.gates.push_back(
            CliffordGate::one(k, layer.rotation_qubit));
      }
    }
    for (std::size_t gidx = 0; gidx < gates_per_layer; ++gidx) {
      bool two = n >= 2 && rng.next_below(1000) < two_qubit_permille;
      if (two) {
        auto a = static_cast<std::uint32_t>(rng.next_below(n));
        auto b = static_cast<std::uint32_t>(rng.next_below(n - 1));
        if (b >= a) ++b;
        layer.clifford.gates.push_back(
            CliffordGate::two(kDouble[rng.next_below(3)], a, b));
      } else {
        auto q = static_cast<std::uint32_t>(rng.next_below(n));
        layer.clifford.gates.push_back(
            CliffordGate::one(kSingle[rng.next_below(6)], q));
      }
    }
    c.layers.push_back(std::move(layer));
  }
  c.check();
  return c;
}

}  // namespace pauliprop
