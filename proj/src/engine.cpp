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

#include "pauliprop/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "pauliprop/errors.hpp"
#include "pauliprop/rng.hpp"

namespace pauliprop {

namespace {

// Children with smaller magnitude are exact zeros in practice (AD has
// t_X = t_Y = 0, dephasing has t_Z = 0).
constexpr double kPruneEps = 1e-15;

struct Branch {
  PauliString pauli;
  double q_factor = 1.0;  // product of |channel factors|
  MonomialKey key;        // the +-1 process record; |h| = key.size()
  std::uint32_t splits = 0;
  std::size_t next_layer = 0;  // 1-based; processed downwards
};

struct ChildSpec {
  Axis axis;
  double coeff;
  ProcessLabel label;
  std::optional<Trig> trig;
};

/// Depth-first tree expansion shared by the deterministic, Monte-Carlo and
/// exact modes. Branch coefficients are flushed into the accumulator at path
/// closure, so memory is bounded by the live frontier.
class TreeWalker {
 public:
  TreeWalker(const Circuit &c, std::int64_t ell, CounterRng *rng,
             const EngineOptions &opts)
      : circuit_(c), ell_(ell), rng_(rng), opts_(opts) {
    acc_.m = c.num_rotations();
  }

  void run(const PauliString &obs) {
    Branch root{obs, 1.0, {}, 0, circuit_.num_rotations()};
    stack_.clear();
    stack_.push_back(std::move(root));
    while (!stack_.empty()) {
      peak_live_ = std::max(peak_live_, stack_.size());
      Branch b = std::move(stack_.back());
      stack_.pop_back();
      advance(std::move(b));
    }
  }

  Surrogate take_surrogate() { return std::move(acc_); }
  std::size_t discarded() const { return discarded_; }
  std::size_t closures() const { return closures_; }
  std::size_t peak_live() const { return peak_live_; }
  std::optional<std::uint64_t> min_discarded_h() const {
    return discarded_ > 0 ? std::optional<std::uint64_t>(min_h_)
                          : std::nullopt;
  }

 private:
  void close(Branch &&b) {
    ++closures_;
    if (opts_.max_exact_closures && closures_ > opts_.max_exact_closures) {
      throw ResourceError(
          "path-closure budget (" + std::to_string(opts_.max_exact_closures) +
          ") exceeded; use the dense oracle for this instance");
    }
    if (b.pauli.is_diagonal()) {
      // Layers were visited backwards; keys are stored ascending.
      std::reverse(b.key.begin(), b.key.end());
      acc_.terms[std::move(b.key)] +=
          static_cast<double>(b.pauli.sign()) * b.q_factor;
    }
  }

  void discard(const Branch &b) {
    ++discarded_;
    min_h_ = std::min<std::uint64_t>(min_h_, b.key.size());
  }

  void apply_child(Branch &b, const ChildSpec &spec, std::size_t layer_1based,
                   double extra_scale) {
    b.pauli.set_axis(circuit_.layers[layer_1based - 1].rotation_qubit,
                     spec.axis);
    double f = spec.coeff * extra_scale;
    b.q_factor *= std::abs(f);
    if (f < 0) b.pauli.flip_sign();
    if (spec.trig.has_value()) {
      b.key.emplace_back(static_cast<std::uint32_t>(layer_1based),
                         *spec.trig);
    }
  }

  // Surviving sub-processes of the noisy rotation at this axis.
  std::vector<ChildSpec> children_for(const NormalFormChannel &ch, Axis axis) {
    std::vector<ChildSpec> out;
    switch (axis) {
      case Axis::Z:
        out = {{Axis::Z, ch.D[2], ProcessLabel::ZeroZ, std::nullopt},
               {Axis::I, ch.t[2], ProcessLabel::ZeroI, std::nullopt}};
        break;
      case Axis::X:
        out = {{Axis::X, ch.D[0], ProcessLabel::Plus, Trig::Cos},
               {Axis::Y, ch.D[0], ProcessLabel::Minus, Trig::Sin},
               {Axis::I, ch.t[0], ProcessLabel::ZeroX, std::nullopt}};
        break;
      case Axis::Y:
        out = {{Axis::Y, ch.D[1], ProcessLabel::Plus, Trig::Cos},
               {Axis::X, -ch.D[1], ProcessLabel::Minus, Trig::Sin},
               {Axis::I, ch.t[1], ProcessLabel::ZeroY, std::nullopt}};
        break;
      default:
        break;
    }
    std::erase_if(out, [](const ChildSpec &s) {
      return std::abs(s.coeff) < kPruneEps;
    });
    return out;
  }

  void push(Branch &&b) {
    if (stack_.size() + 1 > opts_.max_live_branches) {
      throw ResourceError("live-branch budget (" +
                          std::to_string(opts_.max_live_branches) +
                          ") exceeded");
    }
    stack_.push_back(std::move(b));
  }

  /// Walks one branch until it closes, splits (children pushed), is
  /// discarded, or dies.
  void advance(Branch &&b) {
    for (std::size_t i = b.next_layer; i >= 1; --i) {
      const Layer &layer = circuit_.layers[i - 1];
      b.pauli = conjugate_layer(b.pauli, layer.clifford);
      if (b.pauli.is_identity()) {
        // All-identity can never split again; <0|I|0> = 1.
        close(std::move(b));
        return;
      }
      Axis axis = b.pauli.axis(layer.rotation_qubit);
      if (axis == Axis::I) continue;
      b.next_layer = i - 1;
      if (rng_ == nullptr) {
        if (!advance_deterministic(b, axis, i)) return;
      } else {
        if (!advance_sampled(b, axis, i)) return;
      }
    }
    b.pauli = conjugate_layer(b.pauli, circuit_.initial_clifford);
    close(std::move(b));
  }

  /// Returns false when the branch was consumed (split, discarded or died).
  bool advance_deterministic(Branch &b, Axis axis, std::size_t i) {
    auto kids = children_for(circuit_.layers[i - 1].noise, axis);
    if (kids.empty()) return false;  // all coefficients vanished
    if (kids.size() == 1) {
      apply_child(b, kids[0], i, 1.0);
      return true;
    }
    if (ell_ >= 0 && b.splits == static_cast<std::uint64_t>(ell_)) {
      discard(b);
      return false;
    }
    if (opts_.on_split) {
      SplitEvent ev{i, axis, {}};
      for (const auto &k : kids) ev.children.emplace_back(k.label, k.coeff);
      opts_.on_split(ev);
    }
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      Branch child = b;
      child.splits = b.splits + 1;
      apply_child(child, *it, i, 1.0);
      push(std::move(child));
    }
    return false;
  }

  bool advance_sampled(Branch &b, Axis axis, std::size_t i) {
    const NormalFormChannel &ch = circuit_.layers[i - 1].noise;
    int ai = axis == Axis::X ? 0 : (axis == Axis::Y ? 1 : 2);
    double s = std::abs(ch.D[ai]) + std::abs(ch.t[ai]);
    if (s < kPruneEps) return false;
    double u = rng_->next_double();
    if (axis == Axis::Z) {
      // Single child either way; the sampling factor s is divided out so the
      // estimator stays unbiased (for AD, s = 1 exactly).
      bool keep_z = u < std::abs(ch.D[2]) / s;
      ChildSpec spec = keep_z
          ? ChildSpec{Axis::Z, ch.D[2] < 0 ? -1.0 : 1.0, ProcessLabel::ZeroZ,
                      std::nullopt}
          : ChildSpec{Axis::I, ch.t[2] < 0 ? -1.0 : 1.0, ProcessLabel::ZeroI,
                      std::nullopt};
      apply_child(b, spec, i, s);
      return true;
    }
    if (u < std::abs(ch.t[ai]) / s) {
      ChildSpec spec{Axis::I, ch.t[ai] < 0 ? -1.0 : 1.0,
                     ai == 0 ? ProcessLabel::ZeroX : ProcessLabel::ZeroY,
                     std::nullopt};
      apply_child(b, spec, i, s);
      return true;
    }
    if (ell_ >= 0 && b.splits == static_cast<std::uint64_t>(ell_)) {
      discard(b);
      return false;
    }
    double dsgn = ch.D[ai] < 0 ? -1.0 : 1.0;
    ChildSpec cos_spec{axis, dsgn, ProcessLabel::Plus, Trig::Cos};
    ChildSpec sin_spec{axis == Axis::X ? Axis::Y : Axis::X,
                       axis == Axis::Y ? -dsgn : dsgn, ProcessLabel::Minus,
                       Trig::Sin};
    for (const ChildSpec &spec : {sin_spec, cos_spec}) {
      Branch child = b;
      child.splits = b.splits + 1;
      apply_child(child, spec, i, s);
      push(std::move(child));
    }
    return false;
  }

  const Circuit &circuit_;
  std::int64_t ell_;
  CounterRng *rng_;
  const EngineOptions &opts_;
  std::vector<Branch> stack_;
  Surrogate acc_;
  std::size_t discarded_ = 0;
  std::size_t closures_ = 0;
  std::size_t peak_live_ = 0;
  std::uint64_t min_h_ = std::numeric_limits<std::uint64_t>::max();
};

void check_instance(const Circuit &c, const PauliString &obs) {
  c.check();
  if (obs.num_qubits() != c.n) {
    throw SchemaError("observable has " + std::to_string(obs.num_qubits()) +
                      " qubits, circuit has " + std::to_string(c.n));
  }
}

void fill_channel_summary(const Circuit &c, BuildReport &rep) {
  rep.all_amplitude_damping = true;
  rep.gamma_min = 1.0;
  rep.xy_damping_max = 0.0;
  for (const Layer &layer : c.layers) {
    auto g = amplitude_damping_gamma(layer.noise);
    if (g.has_value()) {
      rep.gamma_min = std::min(rep.gamma_min, *g);
    } else {
      rep.all_amplitude_damping = false;
    }
    rep.xy_damping_max = std::max(rep.xy_damping_max,
                                  xy_damping(layer.noise));
  }
  if (c.layers.empty()) {
    rep.gamma_min = 0.0;
  }
  rep.channel_summary =
      rep.all_amplitude_damping
          ? "amplitude_damping:gamma_min=" + std::to_string(rep.gamma_min)
          : "general:xy_damping_max=" + std::to_string(rep.xy_damping_max);
}

}  // namespace

BuildReport build_deterministic(const Circuit &c, const PauliString &obs,
                                std::size_t ell, const EngineOptions &opts) {
  check_instance(c, obs);
  TreeWalker walker(c, static_cast<std::int64_t>(ell), nullptr, opts);
  walker.run(obs);
  BuildReport rep;
  rep.mode = BuildMode::Deterministic;
  rep.ell = static_cast<std::int64_t>(ell);
  rep.surrogate = walker.take_surrogate();
  rep.r_certificate = walker.min_discarded_h();
  rep.discarded_count = walker.discarded();
  rep.expanded_branch_count = walker.closures();
  rep.peak_live_branches = walker.peak_live();
  fill_channel_summary(c, rep);
  return rep;
}

Surrogate sample_tree(const Circuit &c, const PauliString &obs,
                      std::size_t ell, std::uint64_t tree_seed,
                      const EngineOptions &opts) {
  check_instance(c, obs);
  for (std::size_t i = 0; i < c.layers.size(); ++i) {
    double s = xy_damping(c.layers[i].noise);
    if (s > 1.0 + kChannelTol) {
      throw AdmissibilityError("sample_tree: layers[" + std::to_string(i) +
                               "] violates the X/Y damping hypothesis");
    }
  }
  CounterRng rng(tree_seed);
  EngineOptions local = opts;
  local.on_split = nullptr;
  TreeWalker walker(c, static_cast<std::int64_t>(ell), &rng, local);
  walker.run(obs);
  return walker.take_surrogate();
}

BuildReport build_mc(const Circuit &c, const PauliString &obs, std::size_t ell,
                     std::size_t trees, std::uint64_t seed,
                     const EngineOptions &opts) {
  if (trees < 1) throw SchemaError("build_mc: need K >= 1");
  check_instance(c, obs);

  // Fixed-size chunks make the merge order independent of the worker count:
  // trees are accumulated sequentially within a chunk and chunks are merged
  // in index order.
  constexpr std::size_t kChunk = 16;
  const std::size_t num_chunks = (trees + kChunk - 1) / kChunk;
  std::vector<Surrogate> chunk_sums(num_chunks);

  auto run_chunk = [&](std::size_t chunk) {
    Surrogate sum;
    sum.m = c.num_rotations();
    std::size_t lo = chunk * kChunk;
    std::size_t hi = std::min(trees, lo + kChunk);
    for (std::size_t k = lo; k < hi; ++k) {
      Surrogate one =
          sample_tree(c, obs, ell, CounterRng::derive(seed, k), opts);
      for (const auto &[key, coeff] : one.terms) sum.terms[key] += coeff;
    }
    chunk_sums[chunk] = std::move(sum);
  };

  std::size_t threads = opts.threads == 0
                            ? std::max(1u, std::thread::hardware_concurrency())
                            : opts.threads;
  threads = std::min(threads, num_chunks);
  if (threads <= 1) {
    for (std::size_t chunk = 0; chunk < num_chunks; ++chunk) run_chunk(chunk);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t chunk = next.fetch_add(1); chunk < num_chunks;
             chunk = next.fetch_add(1)) {
          run_chunk(chunk);
        }
      });
    }
    for (auto &th : pool) th.join();
  }

  BuildReport rep;
  rep.mode = BuildMode::MonteCarlo;
  rep.ell = static_cast<std::int64_t>(ell);
  rep.trees = trees;
  rep.seed = seed;
  rep.surrogate.m = c.num_rotations();
  for (std::size_t chunk = 0; chunk < num_chunks; ++chunk) {
    for (const auto &[key, coeff] : chunk_sums[chunk].terms) {
      rep.surrogate.terms[key] += coeff;
    }
  }
  double inv_k = 1.0 / static_cast<double>(trees);
  for (auto &[key, coeff] : rep.surrogate.terms) coeff *= inv_k;
  fill_channel_summary(c, rep);
  return rep;
}

BuildReport exact_tree(const Circuit &c, const PauliString &obs,
                       const EngineOptions &opts) {
  check_instance(c, obs);
  TreeWalker walker(c, /*ell=*/-1, nullptr, opts);
  walker.run(obs);
  BuildReport rep;
  rep.mode = BuildMode::Exact;
  rep.surrogate = walker.take_surrogate();
  rep.expanded_branch_count = walker.closures();
  rep.peak_live_branches = walker.peak_live();
  fill_channel_summary(c, rep);
  return rep;
}

double certificate_bound(const BuildReport &report) {
  if (report.mode == BuildMode::MonteCarlo) {
    throw SchemaError("certificate_bound: not defined for MC reports");
  }
  if (!report.r_certificate.has_value()) return 0.0;
  if (!report.all_amplitude_damping) {
    throw AdmissibilityError(
        "certificate_bound: formal bound requires amplitude damping on every "
        "layer");
  }
  return std::pow(1.0 - report.gamma_min,
                  static_cast<double>(*report.r_certificate) / 2.0);
}

}  // namespace pauliprop
