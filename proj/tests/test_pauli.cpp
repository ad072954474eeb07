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

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "pauliprop/errors.hpp"
#include "pauliprop/rng.hpp"

namespace pp = pauliprop;

namespace {

// Independent dense matrix oracle for Clifford conjugation, built from raw
// complex arithmetic so it shares nothing with the bit-pair implementation.
using Cx = std::complex<double>;
using Mat = std::vector<std::vector<Cx>>;

Mat mul(const Mat &a, const Mat &b) {
  std::size_t n = a.size();
  Mat out(n, std::vector<Cx>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

Mat dagger(const Mat &a) {
  std::size_t n = a.size();
  Mat out(n, std::vector<Cx>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i][j] = std::conj(a[j][i]);
  }
  return out;
}

Mat kron(const Mat &a, const Mat &b) {
  std::size_t na = a.size(), nb = b.size();
  Mat out(na * nb, std::vector<Cx>(na * nb, 0));
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      for (std::size_t k = 0; k < nb; ++k) {
        for (std::size_t l = 0; l < nb; ++l) {
          out[i * nb + k][j * nb + l] = a[i][j] * b[k][l];
        }
      }
    }
  }
  return out;
}

const Cx I1(0, 1);

Mat axis_matrix(pp::Axis a) {
  switch (a) {
    case pp::Axis::I:
      return {{1, 0}, {0, 1}};
    case pp::Axis::X:
      return {{0, 1}, {1, 0}};
    case pp::Axis::Y:
      return {{0, -I1}, {I1, 0}};
    case pp::Axis::Z:
      return {{1, 0}, {0, -1}};
  }
  return {};
}

Mat gate_matrix_1q(pp::GateKind k) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (k) {
    case pp::GateKind::H:
      return {{r, r}, {r, -r}};
    case pp::GateKind::S:
      return {{1, 0}, {0, I1}};
    case pp::GateKind::Sdg:
      return {{1, 0}, {0, -I1}};
    case pp::GateKind::X:
    case pp::GateKind::Y:
    case pp::GateKind::Z:
      return axis_matrix(static_cast<pp::Axis>(
          static_cast<int>(k) - static_cast<int>(pp::GateKind::X) + 1));
    default:
      REQUIRE(false);
  }
  return {};
}

Mat gate_matrix_2q(pp::GateKind k) {
  switch (k) {
    case pp::GateKind::CX:
      return {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    case pp::GateKind::CZ:
      return {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}};
    case pp::GateKind::SWAP:
      return {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
    default:
      REQUIRE(false);
  }
  return {};
}

/// Finds the signed Pauli equal to the matrix; fails the test if the matrix
/// is not a signed Pauli (which would mean a non-Clifford slipped in).
std::pair<std::vector<pp::Axis>, int> match_pauli(const Mat &m,
                                                  std::size_t qubits) {
  std::size_t count = std::size_t{1} << (2 * qubits);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::vector<pp::Axis> axes;
    Mat cand{{1}};
    for (std::size_t q = 0; q < qubits; ++q) {
      auto a = static_cast<pp::Axis>((idx >> (2 * q)) & 3);
      axes.push_back(a);
      cand = kron(cand, axis_matrix(a));
    }
    for (int sign : {+1, -1}) {
      bool same = true;
      for (std::size_t i = 0; i < m.size() && same; ++i) {
        for (std::size_t j = 0; j < m.size() && same; ++j) {
          if (std::abs(m[i][j] - double(sign) * cand[i][j]) > 1e-12) {
            same = false;
          }
        }
      }
      if (same) return {axes, sign};
    }
  }
  REQUIRE(false);
  return {};
}

}  // namespace

TEST_CASE("single-qubit conjugation matches the matrix oracle exhaustively") {
  for (pp::GateKind k : {pp::GateKind::H, pp::GateKind::S, pp::GateKind::Sdg,
                         pp::GateKind::X, pp::GateKind::Y, pp::GateKind::Z}) {
    Mat u = gate_matrix_1q(k);
    for (pp::Axis a :
         {pp::Axis::I, pp::Axis::X, pp::Axis::Y, pp::Axis::Z}) {
      Mat expected = mul(mul(dagger(u), axis_matrix(a)), u);
      auto [axes, sign] = match_pauli(expected, 1);

      pp::PauliString p(1);
      p.set_axis(0, a);
      pp::PauliString got =
          pp::conjugate_gate(p, pp::CliffordGate::one(k, 0));
      CAPTURE(pp::gate_name(k));
      CAPTURE(pp::axis_char(a));
      CHECK(got.axis(0) == axes[0]);
      CHECK(got.sign() == sign);
    }
  }
}

TEST_CASE("two-qubit conjugation matches the matrix oracle exhaustively") {
  for (pp::GateKind k :
       {pp::GateKind::CX, pp::GateKind::CZ, pp::GateKind::SWAP}) {
    Mat u = gate_matrix_2q(k);
    for (int ia = 0; ia < 4; ++ia) {
      for (int ib = 0; ib < 4; ++ib) {
        auto a = static_cast<pp::Axis>(ia);
        auto b = static_cast<pp::Axis>(ib);
        Mat pab = kron(axis_matrix(a), axis_matrix(b));
        Mat expected = mul(mul(dagger(u), pab), u);
        auto [axes, sign] = match_pauli(expected, 2);

        pp::PauliString p(2);
        p.set_axis(0, a);
        p.set_axis(1, b);
        pp::PauliString got =
            pp::conjugate_gate(p, pp::CliffordGate::two(k, 0, 1));
        CAPTURE(pp::gate_name(k));
        CAPTURE(ia);
        CAPTURE(ib);
        CHECK(got.axis(0) == axes[0]);
        CHECK(got.axis(1) == axes[1]);
        CHECK(got.sign() == sign);
      }
    }
  }
}

TEST_CASE("conjugating by a layer then its inverse is the identity map") {
  pp::CounterRng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 2 + rng.next_below(4);
    pp::CliffordLayer layer;
    for (int g = 0; g < 12; ++g) {
      auto kind = static_cast<pp::GateKind>(rng.next_below(9));
      std::uint32_t q0 = std::uint32_t(rng.next_below(n));
      if (pp::gate_is_two_qubit(kind)) {
        std::uint32_t q1 = std::uint32_t(rng.next_below(n - 1));
        if (q1 >= q0) ++q1;
        layer.gates.push_back(pp::CliffordGate::two(kind, q0, q1));
      } else {
        layer.gates.push_back(pp::CliffordGate::one(kind, q0));
      }
    }
    pp::PauliString p(n);
    for (std::size_t q = 0; q < n; ++q) {
      p.set_axis(q, static_cast<pp::Axis>(rng.next_below(4)));
    }
    pp::PauliString round =
        pp::conjugate_layer(pp::conjugate_layer(p, layer),
                            pp::inverse_layer(layer));
    CHECK(round == p);
  }
}

TEST_CASE("parse and format round trip") {
  for (const char *text : {"XYZ", "-IZX", "+ZZZZ", "I"}) {
    pp::PauliString p = pp::parse_pauli(text);
    std::string canon = text[0] == '+' ? text + 1 : text;
    CHECK(pp::format_pauli(p) == canon);
  }
  CHECK_THROWS_AS((void)pp::parse_pauli("XQZ"), pp::SchemaError);
  CHECK_THROWS_AS((void)pp::parse_pauli(""), pp::SchemaError);
  CHECK_THROWS_AS((void)pp::parse_pauli("-"), pp::SchemaError);
}

TEST_CASE("diagonality and identity predicates") {
  pp::PauliString p = pp::parse_pauli("IZIZ");
  CHECK(p.is_diagonal());
  CHECK_FALSE(p.is_identity());
  p.set_axis(2, pp::Axis::X);
  CHECK_FALSE(p.is_diagonal());
  CHECK(pp::parse_pauli("IIII").is_identity());
}

TEST_CASE("axes survive word-boundary qubit indices") {
  pp::PauliString p(130);
  p.set_axis(63, pp::Axis::Y);
  p.set_axis(64, pp::Axis::Z);
  p.set_axis(129, pp::Axis::X);
  CHECK(p.axis(63) == pp::Axis::Y);
  CHECK(p.axis(64) == pp::Axis::Z);
  CHECK(p.axis(129) == pp::Axis::X);
  CHECK(p.axis(0) == pp::Axis::I);
}
