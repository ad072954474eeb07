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

#include "pauliprop/pauli.hpp"

#include <algorithm>

#include "pauliprop/errors.hpp"

namespace pauliprop {

char axis_char(Axis a) {
  switch (a) {
    case Axis::I:
      return 'I';
    case Axis::X:
      return 'X';
    case Axis::Y:
      return 'Y';
    case Axis::Z:
      return 'Z';
  }
  return '?';
}

PauliString::PauliString(std::size_t n, int sign) : n_(n), sign_(sign) {
  if (n == 0) {
    throw SchemaError("PauliString needs at least one qubit");
  }
  x_.assign((n + 63) / 64, 0);
  z_.assign((n + 63) / 64, 0);
}

Axis PauliString::axis(std::size_t q) const {
  bool x = x_bit(q);
  bool z = z_bit(q);
  if (x && z) return Axis::Y;
  if (x) return Axis::X;
  if (z) return Axis::Z;
  return Axis::I;
}

void PauliString::set_axis(std::size_t q, Axis a) {
  set_x(q, a == Axis::X || a == Axis::Y);
  set_z(q, a == Axis::Z || a == Axis::Y);
}

bool PauliString::is_identity() const {
  auto all_zero = [](const std::vector<std::uint64_t> &w) {
    return std::all_of(w.begin(), w.end(),
                       [](std::uint64_t b) { return b == 0; });
  };
  return all_zero(x_) && all_zero(z_);
}

bool PauliString::is_diagonal() const {
  return std::all_of(x_.begin(), x_.end(),
                     [](std::uint64_t b) { return b == 0; });
}

bool PauliString::operator==(const PauliString &other) const {
  return n_ == other.n_ && sign_ == other.sign_ && x_ == other.x_ &&
         z_ == other.z_;
}

bool gate_is_two_qubit(GateKind kind) {
  return kind == GateKind::CX || kind == GateKind::CZ || kind == GateKind::SWAP;
}

std::string gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H:
      return "H";
    case GateKind::S:
      return "S";
    case GateKind::Sdg:
      return "SDG";
    case GateKind::X:
      return "X";
    case GateKind::Y:
      return "Y";
    case GateKind::Z:
      return "Z";
    case GateKind::CX:
      return "CX";
    case GateKind::CZ:
      return "CZ";
    case GateKind::SWAP:
      return "SWAP";
  }
  return "?";
}

GateKind gate_from_name(const std::string &name) {
  if (name == "H") return GateKind::H;
  if (name == "S") return GateKind::S;
  if (name == "SDG") return GateKind::Sdg;
  if (name == "X") return GateKind::X;
  if (name == "Y") return GateKind::Y;
  if (name == "Z") return GateKind::Z;
  if (name == "CX") return GateKind::CX;
  if (name == "CZ") return GateKind::CZ;
  if (name == "SWAP") return GateKind::SWAP;
  throw SchemaError("unknown gate name: " + name);
}

void check_gate_bounds(const CliffordGate &g, std::size_t n) {
  if (g.q0 >= n) {
    throw SchemaError("gate " + gate_name(g.kind) + " qubit " +
                      std::to_string(g.q0) + " out of range for n=" +
                      std::to_string(n));
  }
  if (gate_is_two_qubit(g.kind)) {
    if (g.q1 >= n) {
      throw SchemaError("gate " + gate_name(g.kind) + " qubit " +
                        std::to_string(g.q1) + " out of range for n=" +
                        std::to_string(n));
    }
    if (g.q0 == g.q1) {
      throw SchemaError("two-qubit gate " + gate_name(g.kind) +
                        " needs distinct qubits");
    }
  }
}

void check_layer_bounds(const CliffordLayer &layer, std::size_t n) {
  for (const auto &g : layer.gates) check_gate_bounds(g, n);
}

namespace {

// g' P g for a single-qubit Clifford, on the (x, z) bit pair. Sign flips are
// derived from the 2x2 matrix algebra with S = diag(1, i); the exhaustive
// matrix-oracle test pins every entry.
void conj_single(PauliString &p, GateKind kind, std::size_t q) {
  bool x = p.x_bit(q);
  bool z = p.z_bit(q);
  switch (kind) {
    case GateKind::H:
      // X <-> Z, Y -> -Y
      if (x && z) p.flip_sign();
      p.set_x(q, z);
      p.set_z(q, x);
      break;
    case GateKind::S:
      // X -> -Y, Y -> X, Z -> Z
      if (x && !z) p.flip_sign();
      if (x) p.set_z(q, !z);
      break;
    case GateKind::Sdg:
      // X -> Y, Y -> -X, Z -> Z
      if (x && z) p.flip_sign();
      if (x) p.set_z(q, !z);
      break;
    case GateKind::X:
      if (z) p.flip_sign();  // Z -> -Z, Y -> -Y
      break;
    case GateKind::Y:
      if (x != z) p.flip_sign();  // X -> -X, Z -> -Z
      break;
    case GateKind::Z:
      if (x) p.flip_sign();  // X -> -X, Y -> -Y
      break;
    default:
      throw SchemaError("conj_single called with a two-qubit gate");
  }
}

// CNOT is self-inverse; CHP-style update with the Y (x&z) sign correction.
void conj_cx(PauliString &p, std::size_t c, std::size_t t) {
  bool xc = p.x_bit(c), zc = p.z_bit(c);
  bool xt = p.x_bit(t), zt = p.z_bit(t);
  if (xc && zt && (xt == zc)) p.flip_sign();
  p.set_x(t, xt != xc);
  p.set_z(c, zc != zt);
}

}  // namespace

PauliString conjugate_gate(const PauliString &p, const CliffordGate &g) {
  check_gate_bounds(g, p.num_qubits());
  PauliString out = p;
  switch (g.kind) {
    case GateKind::CX:
      conj_cx(out, g.q0, g.q1);
      break;
    case GateKind::CZ:
      // CZ = (I (x) H) CX (I (x) H)
      conj_single(out, GateKind::H, g.q1);
      conj_cx(out, g.q0, g.q1);
      conj_single(out, GateKind::H, g.q1);
      break;
    case GateKind::SWAP:
      conj_cx(out, g.q0, g.q1);
      conj_cx(out, g.q1, g.q0);
      conj_cx(out, g.q0, g.q1);
      break;
    default:
      conj_single(out, g.kind, g.q0);
      break;
  }
  return out;
}

PauliString conjugate_layer(const PauliString &p, const CliffordLayer &layer) {
  PauliString out = p;
  for (auto it = layer.gates.rbegin(); it != layer.gates.rend(); ++it) {
    out = conjugate_gate(out, *it);
  }
  return out;
}

CliffordLayer inverse_layer(const CliffordLayer &layer) {
  CliffordLayer inv;
  inv.gates.reserve(layer.gates.size());
  for (auto it = layer.gates.rbegin(); it != layer.gates.rend(); ++it) {
    CliffordGate g = *it;
    if (g.kind == GateKind::S) {
      g.kind = GateKind::Sdg;
    } else if (g.kind == GateKind::Sdg) {
      g.kind = GateKind::S;
    }
    inv.gates.push_back(g);
  }
  return inv;
}

Axis pauli_axis(const PauliString &p, std::size_t q) {
  if (q >= p.num_qubits()) {
    throw SchemaError("pauli_axis: qubit index out of range");
  }
  return p.axis(q);
}

PauliString parse_pauli(const std::string &text) {
  std::size_t pos = 0;
  int sign = +1;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') sign = -1;
    ++pos;
  }
  if (pos == text.size()) {
    throw SchemaError("empty Pauli string");
  }
  PauliString p(text.size() - pos, sign);
  for (std::size_t q = 0; pos < text.size(); ++pos, ++q) {
    switch (text[pos]) {
      case 'I':
        break;
      case 'X':
        p.set_axis(q, Axis::X);
        break;
      case 'Y':
        p.set_axis(q, Axis::Y);
        break;
      case 'Z':
        p.set_axis(q, Axis::Z);
        break;
      default:
        throw SchemaError("invalid Pauli character '" +
                          std::string(1, text[pos]) + "' at index " +
                          std::to_string(pos));
    }
  }
  return p;
}

std::string format_pauli(const PauliString &p) {
  std::string out;
  out.reserve(p.num_qubits() + 1);
  if (p.sign() < 0) out.push_back('-');
  for (std::size_t q = 0; q < p.num_qubits(); ++q) {
    out.push_back(axis_char(p.axis(q)));
  }
  return out;
}

}  // namespace pauliprop
