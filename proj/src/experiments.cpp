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

#include "pauliprop/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "pauliprop/errors.hpp"
#include "pauliprop/rng.hpp"
#include "pauliprop/surrogate.hpp"

namespace pauliprop {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double elapsed_ms(const std::chrono::steady_clock::time_point &t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

std::uint64_t fnv1a(const std::string &s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char *digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

/// Runs `body(i)` for i in [0, count) on cfg-many workers. Bodies must write
/// only to their own slot so output order stays deterministic.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)> &body) {
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex err_mu;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count;
           i = next.fetch_add(1)) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto &th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

/// Empirical L2 of a surrogate against zero, with per-sample trig tables.
/// Matches empirical_l2 with a zero reference: same angle stream, same
/// estimator, same delta-method standard error.
EmpiricalL2 surrogate_rms(const Surrogate &s, std::size_t samples,
                          std::uint64_t seed) {
  if (samples < 2) throw SchemaError("surrogate_rms: need at least 2 samples");
  CounterRng rng(seed, /*stream=*/0x6c32);
  std::vector<double> ct(s.m), st(s.m);
  double sum_sq = 0, sum_quad = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    for (std::size_t l = 0; l < s.m; ++l) {
      double a = kTwoPi * rng.next_double();
      ct[l] = std::cos(a);
      st[l] = std::sin(a);
    }
    double val = 0;
    for (const auto &[key, coeff] : s.terms) {
      double f = coeff;
      for (const auto &[layer, trig] : key) {
        f *= trig == Trig::Cos ? ct[layer - 1] : st[layer - 1];
      }
      val += f;
    }
    double d2 = val * val;
    sum_sq += d2;
    sum_quad += d2 * d2;
  }
  double n = static_cast<double>(samples);
  double mean_sq = sum_sq / n;
  double var_sq = std::max(0.0, sum_quad / n - mean_sq * mean_sq) / (n - 1);
  EmpiricalL2 out;
  out.estimate = std::sqrt(std::max(0.0, mean_sq));
  double se_mean = std::sqrt(var_sq);
  out.std_error = out.estimate > 1e-12 ? se_mean / (2.0 * out.estimate)
                                       : std::sqrt(se_mean);
  return out;
}

std::string csv_header(const ExperimentConfig &cfg) {
  return "# config=" + config_hash(cfg) + "\n";
}

}  // namespace

void ExperimentConfig::check() const {
  if (family != "qaoa" && family != "random") {
    throw SchemaError("experiment: family must be qaoa or random");
  }
  if (ells.empty()) throw SchemaError("experiment: ell range is empty");
  for (auto e : ells) {
    if (e < 0) throw SchemaError("experiment: ell must be >= 0");
  }
  if (repeats < 1) throw SchemaError("experiment: repeats must be >= 1");
  if (instances < 1) throw SchemaError("experiment: instances must be >= 1");
  if (gammas.empty() && channel_json.empty()) {
    throw SchemaError("experiment: need gammas or a channel spec");
  }
  for (double g : gammas) {
    if (!(g > 0.0) || !(g < 1.0)) {
      throw SchemaError("experiment: gamma must be in (0, 1)");
    }
  }
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw SchemaError("experiment: delta must be in (0, 1)");
  }
  if (trees < 1) throw SchemaError("experiment: trees must be >= 1");
  if (samples < 2) throw SchemaError("experiment: samples must be >= 2");
  if (max_n < 2 || max_m < 1) {
    throw SchemaError("experiment: need max_n >= 2 and max_m >= 1");
  }
}

ExperimentConfig config_from_json(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception &e) {
    throw SchemaError(std::string("experiment config: bad JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  try {
    if (j.contains("family")) cfg.family = j["family"].get<std::string>();
    if (j.contains("nodes")) cfg.nodes = j["nodes"].get<std::size_t>();
    if (j.contains("rounds")) cfg.rounds = j["rounds"].get<std::size_t>();
    if (j.contains("max_n")) cfg.max_n = j["max_n"].get<std::size_t>();
    if (j.contains("max_m")) cfg.max_m = j["max_m"].get<std::size_t>();
    if (j.contains("fixed_n")) {
      cfg.fixed_n = j["fixed_n"].get<std::size_t>();
    }
    if (j.contains("gammas")) {
      cfg.gammas = j["gammas"].get<std::vector<double>>();
    }
    if (j.contains("channel")) cfg.channel_json = j["channel"].dump();
    if (j.contains("ells")) {
      cfg.ells = j["ells"].get<std::vector<std::int64_t>>();
    }
    if (j.contains("trees")) cfg.trees = j["trees"].get<std::size_t>();
    if (j.contains("delta")) cfg.delta = j["delta"].get<double>();
    if (j.contains("repeats")) cfg.repeats = j["repeats"].get<std::size_t>();
    if (j.contains("instances")) {
      cfg.instances = j["instances"].get<std::size_t>();
    }
    if (j.contains("samples")) cfg.samples = j["samples"].get<std::size_t>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<std::size_t>();
  } catch (const json::exception &e) {
    throw SchemaError(std::string("experiment config: ") + e.what());
  }
  cfg.check();
  return cfg;
}

std::string config_to_json(const ExperimentConfig &cfg) {
  json j{{"family", cfg.family},
         {"nodes", cfg.nodes},
         {"rounds", cfg.rounds},
         {"max_n", cfg.max_n},
         {"max_m", cfg.max_m},
         {"fixed_n", cfg.fixed_n},
         {"gammas", cfg.gammas},
         {"ells", cfg.ells},
         {"trees", cfg.trees},
         {"delta", cfg.delta},
         {"repeats", cfg.repeats},
         {"instances", cfg.instances},
         {"samples", cfg.samples},
         {"seed", cfg.seed},
         {"threads", cfg.threads}};
  if (!cfg.channel_json.empty()) j["channel"] = json::parse(cfg.channel_json);
  return j.dump();
}

std::string config_hash(const ExperimentConfig &cfg) {
  // Thread count never changes results, so it is excluded from the hash.
  ExperimentConfig canon = cfg;
  canon.threads = 1;
  return hex64(fnv1a(config_to_json(canon)));
}

RandomInstance make_random_instance(std::size_t max_n, std::size_t max_m,
                                    const std::vector<double> &gammas,
                                    std::uint64_t seed,
                                    const NormalFormChannel *channel_override,
                                    std::size_t fixed_n) {
  CounterRng rng(seed, /*stream=*/0x696e7374);
  RandomInstance inst;
  std::size_t n = fixed_n > 0 ? fixed_n : 2 + rng.next_below(max_n - 1);
  std::size_t m = 1 + rng.next_below(max_m);
  NormalFormChannel noise;
  if (channel_override != nullptr) {
    noise = *channel_override;
  } else {
    inst.gamma = gammas[rng.next_below(gammas.size())];
    noise = amplitude_damping(inst.gamma);
  }
  RandomCircuitOptions opts;
  opts.single_qubit_random_cliffords = true;
  inst.circuit = random_circuit(n, m, noise, rng.next_u64(), opts);
  PauliString obs(n);
  while (obs.is_identity()) {
    for (std::size_t q = 0; q < n; ++q) {
      // Weight-biased letters: half identity, half uniform over X, Y, Z.
      std::uint64_t d = rng.next_below(6);
      obs.set_axis(q, d < 3 ? Axis::I : static_cast<Axis>(d - 2));
    }
  }
  inst.observable = obs;
  return inst;
}

ExperimentResult run_r_vs_ell(const ExperimentConfig &cfg) {
  cfg.check();
  if (cfg.family != "qaoa") {
    throw SchemaError("run_r_vs_ell: requires the qaoa family");
  }
  double gamma = cfg.gammas.at(0);

  struct Row {
    std::uint64_t seed;
    std::int64_t ell;
    std::optional<std::uint64_t> r;
    std::size_t discarded;
    double ms;
  };
  std::vector<std::vector<Row>> rows(cfg.instances);

  parallel_for(cfg.instances, cfg.threads, [&](std::size_t k) {
    std::uint64_t iseed = CounterRng::derive(cfg.seed, k);
    Graph g = random_regular_graph(cfg.nodes, 3, iseed);
    Circuit c = qaoa_circuit(g, cfg.rounds, amplitude_damping(gamma));
    PauliString obs(cfg.nodes);
    obs.set_axis(g.edges.at(0).first, Axis::Z);
    obs.set_axis(g.edges.at(0).second, Axis::Z);
    for (std::int64_t ell : cfg.ells) {
      auto t0 = std::chrono::steady_clock::now();
      BuildReport rep =
          build_deterministic(c, obs, static_cast<std::size_t>(ell));
      rows[k].push_back(Row{iseed, ell, rep.r_certificate,
                            rep.discarded_count, elapsed_ms(t0)});
    }
  });

  std::ostringstream csv;
  csv << csv_header(cfg);
  csv << "instance,instance_seed,nodes,rounds,ell,r,discarded,build_ms\n";
  std::size_t exceptions = 0;
  std::map<std::int64_t, std::pair<double, std::size_t>> mean_acc;
  std::map<std::int64_t, std::uint64_t> min_r;
  for (std::size_t k = 0; k < cfg.instances; ++k) {
    std::optional<std::uint64_t> prev;
    bool prev_exact = false;
    for (const Row &row : rows[k]) {
      csv << k << ',' << row.seed << ',' << cfg.nodes << ',' << cfg.rounds
          << ',' << row.ell << ','
          << (row.r.has_value() ? std::to_string(*row.r)
                                : std::string("exact"))
          << ',' << row.discarded << ',' << fmt(row.ms) << '\n';
      if (row.r.has_value()) {
        // "exact" counts as r = infinity for monotonicity purposes.
        if (prev_exact || (prev.has_value() && *row.r < *prev)) ++exceptions;
        prev = row.r;
        auto &[sum, cnt] = mean_acc[row.ell];
        sum += static_cast<double>(*row.r);
        ++cnt;
        auto it = min_r.find(row.ell);
        if (it == min_r.end() || *row.r < it->second) min_r[row.ell] = *row.r;
      } else {
        prev_exact = true;
      }
    }
  }

  csv << "# summary\nell,mean_r,min_r,count\n";
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t np = 0;
  for (const auto &[ell, acc] : mean_acc) {
    double mean = acc.first / static_cast<double>(acc.second);
    csv << ell << ',' << fmt(mean) << ',' << min_r[ell] << ',' << acc.second
        << '\n';
    double x = static_cast<double>(ell);
    sx += x;
    sy += mean;
    sxx += x * x;
    sxy += x * mean;
    ++np;
  }
  double slope = 0;
  if (np >= 2) {
    double dn = static_cast<double>(np);
    slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
  }
  csv << "slope," << fmt(slope) << "\nexceptions," << exceptions << '\n';

  ExperimentResult out;
  out.csv = csv.str();
  out.pass = np >= 2 && slope > 0;
  out.note = "slope=" + fmt(slope) + " exceptions=" +
             std::to_string(exceptions);
  return out;
}

ExperimentResult run_certificate_validation(const ExperimentConfig &cfg) {
  cfg.check();

  struct Row {
    std::uint64_t seed;
    std::size_t n, m;
    double gamma;
    std::int64_t ell;
    std::optional<std::uint64_t> r;
    double delta_hat, se, bound;
    bool ok;
  };
  std::vector<std::vector<Row>> rows(cfg.instances);

  parallel_for(cfg.instances, cfg.threads, [&](std::size_t k) {
    std::uint64_t iseed = CounterRng::derive(cfg.seed, k);
    RandomInstance inst = make_random_instance(
        cfg.max_n, cfg.max_m, cfg.gammas, iseed, nullptr, cfg.fixed_n);
    BuildReport exact = exact_tree(inst.circuit, inst.observable);
    for (std::int64_t ell : cfg.ells) {
      BuildReport rep = build_deterministic(inst.circuit, inst.observable,
                                            static_cast<std::size_t>(ell));
      Surrogate diff = combine(1.0, rep.surrogate, -1.0, exact.surrogate);
      EmpiricalL2 emp = surrogate_rms(diff, cfg.samples,
                                      CounterRng::derive(iseed, ell));
      double bound = certificate_bound(rep);
      bool ok = rep.r_certificate.has_value()
                    ? emp.estimate <= bound + 4.0 * emp.std_error
                    : emp.estimate <= 1e-8;
      rows[k].push_back(Row{iseed, inst.circuit.n,
                            inst.circuit.num_rotations(), inst.gamma, ell,
                            rep.r_certificate, emp.estimate, emp.std_error,
                            bound, ok});
    }
  });

  std::ostringstream csv;
  csv << csv_header(cfg);
  csv << "instance,instance_seed,n,m,gamma,ell,r,delta_hat,std_err,bound,"
         "pass\n";
  std::size_t fails = 0, total = 0;
  for (std::size_t k = 0; k < cfg.instances; ++k) {
    for (const Row &row : rows[k]) {
      csv << k << ',' << row.seed << ',' << row.n << ',' << row.m << ','
          << fmt(row.gamma) << ',' << row.ell << ','
          << (row.r.has_value() ? std::to_string(*row.r)
                                : std::string("exact"))
          << ',' << fmt(row.delta_hat) << ',' << fmt(row.se) << ','
          << fmt(row.bound) << ',' << (row.ok ? 1 : 0) << '\n';
      ++total;
      if (!row.ok) ++fails;
    }
  }
  csv << "# summary\nfails," << fails << "\ntotal," << total << '\n';

  ExperimentResult out;
  out.csv = csv.str();
  out.pass = fails == 0;
  out.note = std::to_string(total - fails) + "/" + std::to_string(total) +
             " rows within bound";
  return out;
}

ExperimentResult run_mc_validation(const ExperimentConfig &cfg) {
  cfg.check();
  std::optional<NormalFormChannel> channel;
  if (!cfg.channel_json.empty()) {
    channel = channel_from_json_text(cfg.channel_json);
  }
  std::size_t ell = static_cast<std::size_t>(cfg.ells.at(0));

  struct InstanceOut {
    std::uint64_t seed;
    std::size_t n, m;
    double bound;
    std::vector<double> deltas;
    std::size_t within = 0;
  };
  std::vector<InstanceOut> outs(cfg.instances);

  parallel_for(cfg.instances, cfg.threads, [&](std::size_t k) {
    std::uint64_t iseed = CounterRng::derive(cfg.seed, k);
    RandomInstance inst = make_random_instance(
        cfg.max_n, cfg.max_m, cfg.gammas, iseed,
        channel.has_value() ? &*channel : nullptr, cfg.fixed_n);
    BuildReport exact = exact_tree(inst.circuit, inst.observable);
    double bound;
    if (channel.has_value()) {
      double s = 0;
      for (const Layer &layer : inst.circuit.layers) {
        s = std::max(s, xy_damping(layer.noise));
      }
      bound = mc_bound_general(s, ell, cfg.trees, cfg.delta);
    } else {
      bound = mc_bound_ad(inst.gamma, ell, cfg.trees, cfg.delta);
    }
    InstanceOut &io = outs[k];
    io.seed = iseed;
    io.n = inst.circuit.n;
    io.m = inst.circuit.num_rotations();
    io.bound = bound;
    for (std::size_t r = 0; r < cfg.repeats; ++r) {
      BuildReport mc = build_mc(inst.circuit, inst.observable, ell, cfg.trees,
                                CounterRng::derive(iseed, 0x7265700 + r));
      double d = l2_distance(mc.surrogate, exact.surrogate);
      io.deltas.push_back(d);
      if (d <= bound) ++io.within;
    }
  });

  std::ostringstream csv;
  csv << csv_header(cfg);
  csv << "instance,instance_seed,n,m,ell,K,delta,repeat,delta_hat,bound,"
         "within\n";
  bool pass = true;
  std::ostringstream note;
  for (std::size_t k = 0; k < cfg.instances; ++k) {
    const InstanceOut &io = outs[k];
    for (std::size_t r = 0; r < io.deltas.size(); ++r) {
      csv << k << ',' << io.seed << ',' << io.n << ',' << io.m << ',' << ell
          << ',' << cfg.trees << ',' << fmt(cfg.delta) << ',' << r << ','
          << fmt(io.deltas[r]) << ',' << fmt(io.bound) << ','
          << (io.deltas[r] <= io.bound ? 1 : 0) << '\n';
    }
  }
  csv << "# summary\ninstance,fraction,required\n";
  double required = 1.0 - cfg.delta - 0.05;
  for (std::size_t k = 0; k < cfg.instances; ++k) {
    double frac = static_cast<double>(outs[k].within) /
                  static_cast<double>(cfg.repeats);
    csv << k << ',' << fmt(frac) << ',' << fmt(required) << '\n';
    if (frac < required) pass = false;
    if (k) note << ' ';
    note << fmt(frac);
  }

  ExperimentResult out;
  out.csv = csv.str();
  out.pass = pass;
  out.note = "fractions: " + note.str() + " required: " + fmt(required);
  return out;
}

ExperimentResult run_scaling(const ExperimentConfig &cfg) {
  cfg.check();
  if (cfg.family != "qaoa") {
    throw SchemaError("run_scaling: requires the qaoa family");
  }
  double gamma = cfg.gammas.at(0);
  Graph g = random_regular_graph(cfg.nodes, 3, cfg.seed);
  PauliString obs(cfg.nodes);
  obs.set_axis(g.edges.at(0).first, Axis::Z);
  obs.set_axis(g.edges.at(0).second, Axis::Z);
  NormalFormChannel noise = amplitude_damping(gamma);

  std::ostringstream csv;
  csv << csv_header(cfg);
  csv << "sweep,param,build_ms,ratio\n";

  Circuit c = qaoa_circuit(g, cfg.rounds, noise);
  std::vector<double> times;
  for (std::int64_t ell : cfg.ells) {
    auto t0 = std::chrono::steady_clock::now();
    (void)build_deterministic(c, obs, static_cast<std::size_t>(ell));
    times.push_back(elapsed_ms(t0));
  }
  bool pass = true;
  for (std::size_t i = 0; i < times.size(); ++i) {
    double ratio = i > 0 && times[i - 1] > 0 ? times[i] / times[i - 1] : 0;
    csv << "ell," << cfg.ells[i] << ',' << fmt(times[i]) << ',' << fmt(ratio)
        << '\n';
    // Soft assertion over the mid-range only; the cheap early ells are
    // dominated by fixed overhead and the last may hit the exact plateau.
    bool mid = i >= 2 && i + 1 < times.size();
    if (mid && times[i - 1] > 1.0 && ratio > 3.0) pass = false;
  }

  for (std::size_t rounds = 1; rounds <= cfg.rounds; ++rounds) {
    Circuit cm = qaoa_circuit(g, rounds, noise);
    auto t0 = std::chrono::steady_clock::now();
    (void)build_deterministic(cm, obs,
                              static_cast<std::size_t>(cfg.ells.back()));
    csv << "m," << cm.num_rotations() << ',' << fmt(elapsed_ms(t0)) << ",0\n";
  }

  ExperimentResult out;
  out.csv = csv.str();
  out.pass = pass;
  out.note = pass ? "mid-range ell ratios <= 3"
                  : "mid-range ell ratio exceeded 3";
  return out;
}

}  // namespace pauliprop
