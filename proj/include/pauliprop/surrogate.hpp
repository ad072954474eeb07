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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pauliprop {

enum class Trig : std::uint8_t { Cos = 0, Sin = 1 };

/// Sparse trigonometric monomial: strictly increasing 1-based layer indices,
/// each tagged cos or sin. The empty key is the constant monomial.
using MonomialKey = std::vector<std::pair<std::uint32_t, Trig>>;

/// Truncated Fourier surrogate of an expectation landscape: a map from
/// monomial keys to real coefficients, evaluable at any angle vector.
/// Distinct keys are orthogonal under the uniform measure on [0, 2pi]^m,
/// with squared norm 2^-|key|; that orthogonality is what makes the L2
/// algebra below exact.
struct Surrogate {
  std::size_t m = 0;
  std::map<MonomialKey, double> terms;

  void add_term(const MonomialKey &key, double coeff);
  std::size_t term_count() const { return terms.size(); }
};

double evaluate(const Surrogate &s, const std::vector<double> &theta);

/// a * s1 + b * s2 (termwise); surrogates must share m.
Surrogate combine(double a, const Surrogate &s1, double b,
                  const Surrogate &s2);

/// sqrt(sum over the key union of 2^-|key| (c1 - c2)^2).
double l2_distance(const Surrogate &s1, const Surrogate &s2);
double l2_norm(const Surrogate &s);

/// Truncation term of the sampled-tree error bound plus the Hoeffding
/// statistical term sqrt(2 log(2/delta) / K). AD flavor uses
/// (1-gamma)^((ell+1)/2); the general flavor replaces it with s^(ell+1)
/// where s = max over X,Y of |D_P| + |t_P|.
double mc_bound_ad(double gamma, std::size_t ell, std::size_t trees,
                   double delta);
double mc_bound_general(double xy_damping, std::size_t ell, std::size_t trees,
                        double delta);

struct EmpiricalL2 {
  double estimate = 0;
  double std_error = 0;
};

/// Monte-Carlo estimate of || s - reference ||_2 over uniform angles, with a
/// delta-method standard error. Deterministic for a fixed seed.
EmpiricalL2 empirical_l2(const Surrogate &s,
                         const std::function<double(const std::vector<double> &)>
                             &reference,
                         std::size_t samples, std::uint64_t seed);

/// Metadata block of the surrogate file format.
struct SurrogateMeta {
  std::string mode;  // "deterministic" | "mc" | "exact"
  std::size_t m = 0;
  std::int64_t ell = -1;  // -1 when untruncated
  std::size_t trees = 0;  // MC only
  std::uint64_t seed = 0;  // MC only
  std::optional<std::uint64_t> r_certificate;
  std::string circuit_hash;
  std::string observable;
  std::string channel_summary;
};

std::string surrogate_to_json(const Surrogate &s, const SurrogateMeta &meta);
std::pair<Surrogate, SurrogateMeta> surrogate_from_json(
    const std::string &text);
void save_surrogate(const Surrogate &s, const SurrogateMeta &meta,
                    const std::string &path);
std::pair<Surrogate, SurrogateMeta> load_surrogate(const std::string &path);

}  // namespace pauliprop
