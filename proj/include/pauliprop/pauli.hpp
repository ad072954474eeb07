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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pauliprop {

/// Single-qubit Pauli letter. Encoded per qubit as the bit pair (x, z):
/// I=(0,0), X=(1,0), Y=(1,1), Z=(0,1).
enum class Axis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char axis_char(Axis a);

/// Signed n-qubit Pauli operator. Clifford conjugation of a Hermitian Pauli
/// stays Hermitian, so the phase is tracked as +-1 only.
class PauliString {
 public:
  explicit PauliString(std::size_t n, int sign = +1);

  std::size_t num_qubits() const { return n_; }
  int sign() const { return sign_; }
  void set_sign(int s) { sign_ = s; }
  void flip_sign() { sign_ = -sign_; }

  bool x_bit(std::size_t q) const { return bit(x_, q); }
  bool z_bit(std::size_t q) const { return bit(z_, q); }
  void set_x(std::size_t q, bool v) { set_bit(x_, q, v); }
  void set_z(std::size_t q, bool v) { set_bit(z_, q, v); }

  Axis axis(std::size_t q) const;
  void set_axis(std::size_t q, Axis a);

  bool is_identity() const;
  /// True iff every qubit carries I or Z, i.e. <0...0|P|0...0> = sign.
  bool is_diagonal() const;

  bool operator==(const PauliString &other) const;
  bool operator!=(const PauliString &other) const {
    return !(*this == other);
  }

 private:
  static bool bit(const std::vector<std::uint64_t> &w, std::size_t q) {
    return (w[q >> 6] >> (q & 63)) & 1u;
  }
  static void set_bit(std::vector<std::uint64_t> &w, std::size_t q, bool v) {
    if (v) {
      w[q >> 6] |= std::uint64_t{1} << (q & 63);
    } else {
      w[q >> 6] &= ~(std::uint64_t{1} << (q & 63));
    }
  }

  std::size_t n_;
  int sign_;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
};

enum class GateKind : std::uint8_t { H, S, Sdg, X, Y, Z, CX, CZ, SWAP };

bool gate_is_two_qubit(GateKind kind);
std::string gate_name(GateKind kind);
GateKind gate_from_name(const std::string &name);

struct CliffordGate {
  GateKind kind;
  std::uint32_t q0 = 0;
  std::uint32_t q1 = 0;  // used by two-qubit gates only

  static CliffordGate one(GateKind kind, std::uint32_t q) {
    return CliffordGate{kind, q, q};
  }
  static CliffordGate two(GateKind kind, std::uint32_t a, std::uint32_t b) {
    return CliffordGate{kind, a, b};
  }
  bool operator==(const CliffordGate &) const = default;
};

/// Ordered gate list, applied in listed order in the Schroedinger picture.
struct CliffordLayer {
  std::vector<CliffordGate> gates;

  bool operator==(const CliffordLayer &) const = default;
};

void check_gate_bounds(const CliffordGate &g, std::size_t n);
void check_layer_bounds(const CliffordLayer &layer, std::size_t n);

/// Returns g' . p . g (Heisenberg update), with the sign folded in.
PauliString conjugate_gate(const PauliString &p, const CliffordGate &g);

/// Heisenberg backpropagation through a Schroedinger-ordered gate list:
/// folds conjugate_gate over the gates in reverse order.
PauliString conjugate_layer(const PauliString &p, const CliffordLayer &layer);

/// Inverse layer: conjugating by it undoes conjugate_layer.
CliffordLayer inverse_layer(const CliffordLayer &layer);

Axis pauli_axis(const PauliString &p, std::size_t q);

/// Parses "[+-]?[IXYZ]+" with qubit 0 as the leftmost letter.
/// Throws SchemaError naming the offending character position.
PauliString parse_pauli(const std::string &text);
std::string format_pauli(const PauliString &p);

}  // namespace pauliprop
