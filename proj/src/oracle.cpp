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

#include "pauliprop/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "pauliprop/errors.hpp"

namespace pauliprop {

namespace {

using Cx = std::complex<double>;
using MatX = Eigen::MatrixXcd;

void check_angles(const Circuit &c, const AngleVector &theta) {
  if (theta.size() != c.num_rotations()) {
    throw SchemaError("oracle: theta has " + std::to_string(theta.size()) +
                      " angles, circuit has " +
                      std::to_string(c.num_rotations()) + " rotations");
  }
}

// ---------------------------------------------------------------------------
// PTM oracle: dense real vector over the 4^n Pauli basis, evolved backwards.
// Qubit q occupies base-4 digit q of the index, digit values follow Axis.

Axis digit(std::size_t idx, std::size_t q) {
  return static_cast<Axis>((idx >> (2 * q)) & 3u);
}

std::size_t with_digit(std::size_t idx, std::size_t q, Axis a) {
  std::size_t shift = 2 * q;
  return (idx & ~(std::size_t{3} << shift)) |
         (static_cast<std::size_t>(a) << shift);
}

std::size_t pauli_to_index(const PauliString &p) {
  std::size_t idx = 0;
  for (std::size_t q = 0; q < p.num_qubits(); ++q) {
    idx |= static_cast<std::size_t>(p.axis(q)) << (2 * q);
  }
  return idx;
}

PauliString index_to_pauli(std::size_t idx, std::size_t n) {
  PauliString p(n);
  for (std::size_t q = 0; q < n; ++q) p.set_axis(q, digit(idx, q));
  return p;
}

std::vector<double> conjugate_vector(const std::vector<double> &v,
                                     const CliffordLayer &layer,
                                     std::size_t n) {
  if (layer.gates.empty()) return v;
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    if (v[idx] == 0.0) continue;
    PauliString p = conjugate_layer(index_to_pauli(idx, n), layer);
    out[pauli_to_index(p)] += v[idx] * static_cast<double>(p.sign());
  }
  return out;
}

// Adjoint of the noisy rotation (channel adjoint, then the Rz frame change)
// on the rotation qubit.
std::vector<double> apply_noisy_rotation_adjoint(const std::vector<double> &v,
                                                 const NormalFormChannel &ch,
                                                 std::size_t q, double angle) {
  std::vector<double> out(v.size(), 0.0);
  double ct = std::cos(angle), st = std::sin(angle);
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    double c = v[idx];
    if (c == 0.0) continue;
    switch (digit(idx, q)) {
      case Axis::I:
        out[idx] += c;
        break;
      case Axis::Z:
        out[idx] += c * ch.D[2];
        out[with_digit(idx, q, Axis::I)] += c * ch.t[2];
        break;
      case Axis::X:
        out[idx] += c * ch.D[0] * ct;
        out[with_digit(idx, q, Axis::Y)] += c * ch.D[0] * st;
        out[with_digit(idx, q, Axis::I)] += c * ch.t[0];
        break;
      case Axis::Y:
        out[idx] += c * ch.D[1] * ct;
        out[with_digit(idx, q, Axis::X)] -= c * ch.D[1] * st;
        out[with_digit(idx, q, Axis::I)] += c * ch.t[1];
        break;
    }
  }
  return out;
}

bool index_is_diagonal(std::size_t idx, std::size_t n) {
  for (std::size_t q = 0; q < n; ++q) {
    Axis a = digit(idx, q);
    if (a == Axis::X || a == Axis::Y) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Density-matrix oracle helpers. Qubit 0 is the most significant bit of the
// computational-basis index, matching the leftmost-letter Pauli convention.

std::size_t qubit_mask(std::size_t n, std::size_t q) {
  return std::size_t{1} << (n - 1 - q);
}

MatX embed_one_qubit(const Mat2 &u, std::size_t n, std::size_t q) {
  std::size_t dim = std::size_t{1} << n;
  std::size_t mask = qubit_mask(n, q);
  MatX full = MatX::Zero(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if ((r & ~mask) != (c & ~mask)) continue;
      full(r, c) = u[((r & mask) ? 2 : 0) + ((c & mask) ? 1 : 0)];
    }
  }
  return full;
}

MatX gate_matrix(const CliffordGate &g, std::size_t n) {
  static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Cx i1(0, 1);
  std::size_t dim = std::size_t{1} << n;
  switch (g.kind) {
    case GateKind::H:
      return embed_one_qubit({inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2}, n,
                             g.q0);
    case GateKind::S:
      return embed_one_qubit({1, 0, 0, i1}, n, g.q0);
    case GateKind::Sdg:
      return embed_one_qubit({1, 0, 0, -i1}, n, g.q0);
    case GateKind::X:
      return embed_one_qubit({0, 1, 1, 0}, n, g.q0);
    case GateKind::Y:
      return embed_one_qubit({0, -i1, i1, 0}, n, g.q0);
    case GateKind::Z:
      return embed_one_qubit({1, 0, 0, -1}, n, g.q0);
    case GateKind::CX: {
      MatX full = MatX::Zero(dim, dim);
      std::size_t cm = qubit_mask(n, g.q0), tm = qubit_mask(n, g.q1);
      for (std::size_t b = 0; b < dim; ++b) {
        full((b & cm) ? (b ^ tm) : b, b) = 1.0;
      }
      return full;
    }
    case GateKind::CZ: {
      MatX full = MatX::Zero(dim, dim);
      std::size_t cm = qubit_mask(n, g.q0), tm = qubit_mask(n, g.q1);
      for (std::size_t b = 0; b < dim; ++b) {
        full(b, b) = ((b & cm) && (b & tm)) ? -1.0 : 1.0;
      }
      return full;
    }
    case GateKind::SWAP: {
      MatX full = MatX::Zero(dim, dim);
      std::size_t am = qubit_mask(n, g.q0), bm = qubit_mask(n, g.q1);
      for (std::size_t b = 0; b < dim; ++b) {
        bool ba = b & am, bb = b & bm;
        std::size_t to = b;
        if (ba != bb) to = b ^ am ^ bm;
        full(to, b) = 1.0;
      }
      return full;
    }
  }
  throw SchemaError("unknown gate kind");
}

void apply_unitary(MatX &rho, const MatX &u) { rho = u * rho * u.adjoint(); }

void apply_clifford_layer(MatX &rho, const CliffordLayer &layer,
                          std::size_t n) {
  for (const CliffordGate &g : layer.gates) {
    apply_unitary(rho, gate_matrix(g, n));
  }
}

MatX pauli_matrix(const PauliString &p) {
  std::size_t n = p.num_qubits();
  std::size_t dim = std::size_t{1} << n;
  const Cx i1(0, 1);
  MatX out = MatX::Zero(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    std::size_t r = c;
    Cx amp = static_cast<double>(p.sign());
    for (std::size_t q = 0; q < n; ++q) {
      std::size_t mask = qubit_mask(n, q);
      bool bit = c & mask;
      switch (p.axis(q)) {
        case Axis::I:
          break;
        case Axis::X:
          r ^= mask;
          break;
        case Axis::Y:
          r ^= mask;
          amp *= bit ? -i1 : i1;
          break;
        case Axis::Z:
          if (bit) amp = -amp;
          break;
      }
    }
    out(r, c) = amp;
  }
  return out;
}

}  // namespace

double ptm_expectation(const Circuit &c, const PauliString &obs,
                       const AngleVector &theta) {
  c.check();
  check_angles(c, theta);
  if (obs.num_qubits() != c.n) {
    throw SchemaError("oracle: observable qubit count mismatch");
  }
  if (c.n > kPtmOracleMaxQubits) {
    throw ResourceError("ptm_expectation: dense oracle limited to " +
                        std::to_string(kPtmOracleMaxQubits) + " qubits");
  }
  std::vector<double> v(std::size_t{1} << (2 * c.n), 0.0);
  v[pauli_to_index(obs)] = static_cast<double>(obs.sign());
  for (std::size_t i = c.layers.size(); i >= 1; --i) {
    const Layer &layer = c.layers[i - 1];
    v = conjugate_vector(v, layer.clifford, c.n);
    v = apply_noisy_rotation_adjoint(v, layer.noise, layer.rotation_qubit,
                                     theta[i - 1]);
  }
  v = conjugate_vector(v, c.initial_clifford, c.n);
  double out = 0.0;
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    if (v[idx] != 0.0 && index_is_diagonal(idx, c.n)) out += v[idx];
  }
  return out;
}

double density_expectation(const Circuit &c, const PauliString &obs,
                           const AngleVector &theta,
                           const DensityOracleOptions &opts) {
  c.check();
  check_angles(c, theta);
  if (obs.num_qubits() != c.n) {
    throw SchemaError("oracle: observable qubit count mismatch");
  }
  if (c.n > kDensityOracleMaxQubits) {
    throw ResourceError("density_expectation: dense oracle limited to " +
                        std::to_string(kDensityOracleMaxQubits) + " qubits");
  }
  std::size_t dim = std::size_t{1} << c.n;
  MatX rho = MatX::Zero(dim, dim);
  rho(0, 0) = 1.0;
  apply_clifford_layer(rho, c.initial_clifford, c.n);

  for (std::size_t i = 0; i < c.layers.size(); ++i) {
    const Layer &layer = c.layers[i];
    if (layer.noise.kraus.empty()) {
      throw SchemaError("density_expectation: layers[" + std::to_string(i) +
                        "] channel carries no Kraus set");
    }
    double a = theta[i] / 2.0;
    Mat2 rz{Cx(std::cos(a), std::sin(a)), 0, 0, Cx(std::cos(a), -std::sin(a))};
    apply_unitary(rho, embed_one_qubit(rz, c.n, layer.rotation_qubit));

    if (opts.check_physical) {
      Mat2 sum{0, 0, 0, 0};
      for (const Mat2 &k : layer.noise.kraus) {
        // K^dagger K accumulated entrywise.
        sum[0] += std::conj(k[0]) * k[0] + std::conj(k[2]) * k[2];
        sum[1] += std::conj(k[0]) * k[1] + std::conj(k[2]) * k[3];
        sum[2] += std::conj(k[1]) * k[0] + std::conj(k[3]) * k[2];
        sum[3] += std::conj(k[1]) * k[1] + std::conj(k[3]) * k[3];
      }
      if (std::abs(sum[0] - 1.0) > opts.tol || std::abs(sum[1]) > opts.tol ||
          std::abs(sum[2]) > opts.tol || std::abs(sum[3] - 1.0) > opts.tol) {
        throw AdmissibilityError("density_expectation: layers[" +
                                 std::to_string(i) +
                                 "] Kraus set is not trace preserving");
      }
    }

    MatX next = MatX::Zero(dim, dim);
    for (const Mat2 &k : layer.noise.kraus) {
      MatX kf = embed_one_qubit(k, c.n, layer.rotation_qubit);
      next += kf * rho * kf.adjoint();
    }
    rho = std::move(next);
    if (opts.check_physical && std::abs(rho.trace() - Cx(1.0)) > opts.tol) {
      throw AdmissibilityError("density_expectation: trace drifted at layer " +
                               std::to_string(i));
    }
    apply_clifford_layer(rho, layer.clifford, c.n);
  }

  if (opts.check_physical) {
    MatX herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<MatX> es(herm,
                                           Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -opts.tol) {
      throw AdmissibilityError(
          "density_expectation: final state is not positive semidefinite");
    }
  }
  return (rho * pauli_matrix(obs)).trace().real();
}

}  // namespace pauliprop
