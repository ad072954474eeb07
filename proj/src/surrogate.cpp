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

#include "pauliprop/surrogate.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pauliprop/errors.hpp"
#include "pauliprop/rng.hpp"

namespace pauliprop {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_key(const MonomialKey &key, std::size_t m) {
  std::uint32_t prev = 0;
  for (const auto &[layer, trig] : key) {
    (void)trig;
    if (layer < 1 || layer > m) {
      throw SchemaError("monomial key layer " + std::to_string(layer) +
                        " out of range [1, " + std::to_string(m) + "]");
    }
    if (layer <= prev) {
      throw SchemaError("monomial key layers must be strictly increasing");
    }
    prev = layer;
  }
}

/// Neumaier compensated accumulator.
struct KahanSum {
  double sum = 0, comp = 0;
  void add(double v) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

void Surrogate::add_term(const MonomialKey &key, double coeff) {
  check_key(key, m);
  terms[key] += coeff;
}

double evaluate(const Surrogate &s, const std::vector<double> &theta) {
  if (theta.size() != s.m) {
    throw SchemaError("evaluate: theta has " + std::to_string(theta.size()) +
                      " angles, surrogate expects " + std::to_string(s.m));
  }
  KahanSum acc;
  for (const auto &[key, coeff] : s.terms) {
    double factor = coeff;
    for (const auto &[layer, trig] : key) {
      double a = theta[layer - 1];
      factor *= trig == Trig::Cos ? std::cos(a) : std::sin(a);
    }
    acc.add(factor);
  }
  return acc.value();
}

Surrogate combine(double a, const Surrogate &s1, double b,
                  const Surrogate &s2) {
  if (s1.m != s2.m) throw SchemaError("combine: surrogate m mismatch");
  Surrogate out;
  out.m = s1.m;
  for (const auto &[key, c] : s1.terms) out.terms[key] += a * c;
  for (const auto &[key, c] : s2.terms) out.terms[key] += b * c;
  return out;
}

double l2_distance(const Surrogate &s1, const Surrogate &s2) {
  if (s1.m != s2.m) throw SchemaError("l2_distance: surrogate m mismatch");
  KahanSum acc;
  auto it1 = s1.terms.begin();
  auto it2 = s2.terms.begin();
  auto contribute = [&](const MonomialKey &key, double diff) {
    acc.add(std::ldexp(diff * diff, -static_cast<int>(key.size())));
  };
  while (it1 != s1.terms.end() || it2 != s2.terms.end()) {
    if (it2 == s2.terms.end() ||
        (it1 != s1.terms.end() && it1->first < it2->first)) {
      contribute(it1->first, it1->second);
      ++it1;
    } else if (it1 == s1.terms.end() || it2->first < it1->first) {
      contribute(it2->first, -it2->second);
      ++it2;
    } else {
      contribute(it1->first, it1->second - it2->second);
      ++it1;
      ++it2;
    }
  }
  return std::sqrt(acc.value());
}

double l2_norm(const Surrogate &s) {
  Surrogate empty;
  empty.m = s.m;
  return l2_distance(s, empty);
}

namespace {

double hoeffding_term(std::size_t trees, double delta) {
  if (trees < 1) throw SchemaError("mc_bound: need K >= 1");
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw SchemaError("mc_bound: delta must be in (0, 1)");
  }
  // Looser of the two readings of the statistical term: log(2/delta).
  return std::sqrt(2.0 * std::log(2.0 / delta) /
                   static_cast<double>(trees));
}

}  // namespace

double mc_bound_ad(double gamma, std::size_t ell, std::size_t trees,
                   double delta) {
  if (!(gamma > 0.0) || gamma > 1.0) {
    throw SchemaError("mc_bound_ad: gamma must be in (0, 1]");
  }
  double trunc = std::pow(1.0 - gamma,
                          static_cast<double>(ell + 1) / 2.0);
  return trunc + hoeffding_term(trees, delta);
}

double mc_bound_general(double xy_damping, std::size_t ell, std::size_t trees,
                        double delta) {
  if (xy_damping < 0.0 || xy_damping > 1.0) {
    throw SchemaError("mc_bound_general: damping must be in [0, 1]");
  }
  double trunc = std::pow(xy_damping, static_cast<double>(ell + 1));
  return trunc + hoeffding_term(trees, delta);
}

EmpiricalL2 empirical_l2(
    const Surrogate &s,
    const std::function<double(const std::vector<double> &)> &reference,
    std::size_t samples, std::uint64_t seed) {
  if (samples < 2) throw SchemaError("empirical_l2: need at least 2 samples");
  CounterRng rng(seed, /*stream=*/0x6c32);
  std::vector<double> theta(s.m);
  KahanSum sum_sq, sum_quad;
  for (std::size_t i = 0; i < samples; ++i) {
    for (auto &a : theta) a = kTwoPi * rng.next_double();
    double diff = evaluate(s, theta) - reference(theta);
    double d2 = diff * diff;
    sum_sq.add(d2);
    sum_quad.add(d2 * d2);
  }
  double n = static_cast<double>(samples);
  double mean_sq = sum_sq.value() / n;
  double var_sq =
      std::max(0.0, sum_quad.value() / n - mean_sq * mean_sq) / (n - 1);
  EmpiricalL2 out;
  out.estimate = std::sqrt(std::max(0.0, mean_sq));
  double se_mean = std::sqrt(var_sq);
  // Delta method for sqrt; falls back to sqrt(se) near zero.
  out.std_error = out.estimate > 1e-12 ? se_mean / (2.0 * out.estimate)
                                       : std::sqrt(se_mean);
  return out;
}

std::string surrogate_to_json(const Surrogate &s, const SurrogateMeta &meta) {
  json jm{{"mode", meta.mode},
          {"m", s.m},
          {"ell", meta.ell},
          {"K", meta.trees},
          {"seed", meta.seed},
          {"circuit_hash", meta.circuit_hash},
          {"observable", meta.observable},
          {"channel_summary", meta.channel_summary}};
  if (meta.r_certificate.has_value()) {
    jm["r_certificate"] = *meta.r_certificate;
  } else {
    jm["r_certificate"] = nullptr;
  }
  json terms = json::array();
  for (const auto &[key, coeff] : s.terms) {
    json jkey = json::array();
    for (const auto &[layer, trig] : key) {
      jkey.push_back(
          json::array({layer, trig == Trig::Cos ? "cos" : "sin"}));
    }
    terms.push_back(json{{"coeff", coeff}, {"key", jkey}});
  }
  return json{{"meta", jm}, {"terms", terms}}.dump();
}

std::pair<Surrogate, SurrogateMeta> surrogate_from_json(
    const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception &e) {
    throw SchemaError(std::string("surrogate: bad JSON: ") + e.what());
  }
  try {
    const json &jm = j.at("meta");
    SurrogateMeta meta;
    meta.mode = jm.at("mode").get<std::string>();
    meta.m = jm.at("m").get<std::size_t>();
    meta.ell = jm.at("ell").get<std::int64_t>();
    meta.trees = jm.at("K").get<std::size_t>();
    meta.seed = jm.at("seed").get<std::uint64_t>();
    meta.circuit_hash = jm.at("circuit_hash").get<std::string>();
    meta.observable = jm.at("observable").get<std::string>();
    meta.channel_summary = jm.at("channel_summary").get<std::string>();
    if (!jm.at("r_certificate").is_null()) {
      meta.r_certificate = jm.at("r_certificate").get<std::uint64_t>();
    }
    Surrogate s;
    s.m = meta.m;
    for (const json &term : j.at("terms")) {
      MonomialKey key;
      for (const json &entry : term.at("key")) {
        std::string trig = entry.at(1).get<std::string>();
        if (trig != "cos" && trig != "sin") {
          throw SchemaError("surrogate: trig tag must be cos or sin");
        }
        key.emplace_back(entry.at(0).get<std::uint32_t>(),
                         trig == "cos" ? Trig::Cos : Trig::Sin);
      }
      s.add_term(key, term.at("coeff").get<double>());
    }
    return {std::move(s), std::move(meta)};
  } catch (const json::exception &e) {
    throw SchemaError(std::string("surrogate: ") + e.what());
  }
}

void save_surrogate(const Surrogate &s, const SurrogateMeta &meta,
                    const std::string &path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write surrogate file: " + path);
  out << surrogate_to_json(s, meta) << '\n';
}

std::pair<Surrogate, SurrogateMeta> load_surrogate(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open surrogate file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return surrogate_from_json(buf.str());
}

}  // namespace pauliprop
