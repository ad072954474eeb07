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

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pauliprop/engine.hpp"
#include "pauliprop/errors.hpp"
#include "pauliprop/experiments.hpp"
#include "pauliprop/oracle.hpp"
#include "pauliprop/rng.hpp"

namespace pp = pauliprop;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitSchema = 2;
constexpr int kExitAdmissibility = 3;
constexpr int kExitResources = 4;

std::size_t default_threads() {
  const char *env = std::getenv("PQCPROP_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char *end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || v < 0) {
    throw pp::SchemaError("PQCPROP_THREADS must be a nonnegative integer");
  }
  return static_cast<std::size_t>(v);
}

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw pp::SchemaError("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// No partial files on failure: write next to the target, rename when done.
void write_file_atomic(const std::string &path, const std::string &content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw pp::SchemaError("cannot write file: " + tmp);
    out << content;
    if (!out.flush()) throw pp::SchemaError("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::vector<pp::AngleVector> load_thetas(const std::string &path,
                                         std::size_t m) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception &e) {
    throw pp::SchemaError(std::string("theta file: bad JSON: ") + e.what());
  }
  if (!j.is_array()) throw pp::SchemaError("theta file: expected an array");
  std::vector<pp::AngleVector> out;
  try {
    if (j.empty() || j.at(0).is_number()) {
      out.push_back(j.get<pp::AngleVector>());
    } else {
      out = j.get<std::vector<pp::AngleVector>>();
    }
  } catch (const json::exception &e) {
    throw pp::SchemaError(std::string("theta file: ") + e.what());
  }
  for (const auto &t : out) {
    if (t.size() != m) {
      throw pp::SchemaError("theta file: vector has " +
                            std::to_string(t.size()) + " angles, expected " +
                            std::to_string(m));
    }
  }
  return out;
}

double elapsed_ms(const std::chrono::steady_clock::time_point &t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

json report_summary(const pp::BuildReport &rep, double build_ms) {
  json j{{"terms", rep.surrogate.term_count()},
         {"m", rep.surrogate.m},
         {"discarded", rep.discarded_count},
         {"peak_live_branches", rep.peak_live_branches},
         {"channel_summary", rep.channel_summary},
         {"build_ms", build_ms}};
  if (rep.r_certificate.has_value()) {
    j["r_certificate"] = *rep.r_certificate;
  } else {
    j["r_certificate"] = nullptr;
  }
  return j;
}

pp::SurrogateMeta meta_for(const pp::BuildReport &rep, const pp::Circuit &c,
                           const pp::PauliString &obs) {
  pp::SurrogateMeta meta;
  switch (rep.mode) {
    case pp::BuildMode::Deterministic:
      meta.mode = "deterministic";
      break;
    case pp::BuildMode::MonteCarlo:
      meta.mode = "mc";
      break;
    case pp::BuildMode::Exact:
      meta.mode = "exact";
      break;
  }
  meta.m = rep.surrogate.m;
  meta.ell = rep.ell;
  meta.trees = rep.trees;
  meta.seed = rep.seed;
  meta.r_certificate = rep.r_certificate;
  meta.circuit_hash = pp::circuit_hash(c);
  meta.observable = pp::format_pauli(obs);
  meta.channel_summary = rep.channel_summary;
  return meta;
}

int cmd_build(const std::string &circuit_path, const std::string &obs_text,
              std::int64_t ell, bool exact, const std::string &out_path,
              std::size_t threads) {
  if (!exact && ell < 0) {
    throw pp::SchemaError("build: --ell must be >= 0 (or pass --exact)");
  }
  pp::Circuit c = pp::load_circuit(circuit_path);
  pp::PauliString obs = pp::parse_pauli(obs_text);
  pp::EngineOptions opts;
  opts.threads = threads;
  auto t0 = std::chrono::steady_clock::now();
  pp::BuildReport rep = exact
                            ? pp::exact_tree(c, obs, opts)
                            : pp::build_deterministic(
                                  c, obs, static_cast<std::size_t>(ell), opts);
  double ms = elapsed_ms(t0);
  json summary = report_summary(rep, ms);
  summary["mode"] = rep.mode == pp::BuildMode::Exact ? "exact"
                                                     : "deterministic";
  summary["ell"] = rep.ell;
  if (rep.all_amplitude_damping) {
    summary["bound"] = pp::certificate_bound(rep);
    summary["formal_bound"] = true;
  } else {
    summary["bound"] = nullptr;
    summary["formal_bound"] = false;
  }
  if (!out_path.empty()) {
    write_file_atomic(out_path,
                      pp::surrogate_to_json(rep.surrogate,
                                            meta_for(rep, c, obs)) +
                          "\n");
  }
  std::cout << summary.dump() << '\n';
  return kExitOk;
}

int cmd_sample(const std::string &circuit_path, const std::string &obs_text,
               std::int64_t ell, std::size_t trees, std::uint64_t seed,
               double delta, const std::string &out_path,
               std::size_t threads) {
  if (ell < 0) throw pp::SchemaError("sample: --ell must be >= 0");
  pp::Circuit c = pp::load_circuit(circuit_path);
  pp::PauliString obs = pp::parse_pauli(obs_text);
  pp::EngineOptions opts;
  opts.threads = threads;
  auto t0 = std::chrono::steady_clock::now();
  pp::BuildReport rep =
      pp::build_mc(c, obs, static_cast<std::size_t>(ell), trees, seed, opts);
  double ms = elapsed_ms(t0);
  json summary = report_summary(rep, ms);
  summary["mode"] = "mc";
  summary["ell"] = rep.ell;
  summary["K"] = trees;
  summary["seed"] = seed;
  summary["delta"] = delta;
  summary["mc_bound"] =
      rep.all_amplitude_damping
          ? pp::mc_bound_ad(rep.gamma_min, static_cast<std::size_t>(ell),
                            trees, delta)
          : pp::mc_bound_general(rep.xy_damping_max,
                                 static_cast<std::size_t>(ell), trees, delta);
  if (!out_path.empty()) {
    write_file_atomic(out_path,
                      pp::surrogate_to_json(rep.surrogate,
                                            meta_for(rep, c, obs)) +
                          "\n");
  }
  std::cout << summary.dump() << '\n';
  return kExitOk;
}

int cmd_eval(const std::string &surrogate_path, const std::string &theta_path) {
  auto [s, meta] = pp::load_surrogate(surrogate_path);
  auto thetas = load_thetas(theta_path, s.m);
  std::cout << "index,value\n";
  std::cout.precision(17);
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    std::cout << i << ',' << pp::evaluate(s, thetas[i]) << '\n';
  }
  return kExitOk;
}

int cmd_oracle(const std::string &circuit_path, const std::string &obs_text,
               const std::string &theta_path, const std::string &method) {
  pp::Circuit c = pp::load_circuit(circuit_path);
  pp::PauliString obs = pp::parse_pauli(obs_text);
  auto thetas = load_thetas(theta_path, c.num_rotations());
  std::cout << "index,value\n";
  std::cout.precision(17);
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    double v = method == "density"
                   ? pp::density_expectation(c, obs, thetas[i])
                   : pp::ptm_expectation(c, obs, thetas[i]);
    std::cout << i << ',' << v << '\n';
  }
  return kExitOk;
}

int cmd_validate(const std::string &surrogate_path,
                 const std::string &circuit_path, std::size_t samples,
                 std::uint64_t seed, double delta) {
  auto [s, meta] = pp::load_surrogate(surrogate_path);
  pp::Circuit c = pp::load_circuit(circuit_path);
  if (pp::circuit_hash(c) != meta.circuit_hash) {
    throw pp::SchemaError("validate: circuit hash does not match surrogate");
  }
  pp::PauliString obs = pp::parse_pauli(meta.observable);
  pp::EmpiricalL2 emp = pp::empirical_l2(
      s,
      [&](const std::vector<double> &theta) {
        return pp::ptm_expectation(c, obs, theta);
      },
      samples, seed);

  bool all_ad = true;
  double gamma_min = 1.0, xy_max = 0.0;
  for (const pp::Layer &layer : c.layers) {
    auto g = pp::amplitude_damping_gamma(layer.noise);
    if (g.has_value()) {
      gamma_min = std::min(gamma_min, *g);
    } else {
      all_ad = false;
    }
    xy_max = std::max(xy_max, pp::xy_damping(layer.noise));
  }

  json out{{"delta_hat", emp.estimate}, {"std_err", emp.std_error}};
  double bound;
  bool formal = true;
  if (meta.mode == "mc") {
    bound = all_ad
                ? pp::mc_bound_ad(gamma_min,
                                  static_cast<std::size_t>(meta.ell),
                                  meta.trees, delta)
                : pp::mc_bound_general(xy_max,
                                       static_cast<std::size_t>(meta.ell),
                                       meta.trees, delta);
    out["bound_kind"] = all_ad ? "mc_ad" : "mc_general";
  } else if (!meta.r_certificate.has_value()) {
    bound = 4.0 * emp.std_error + 1e-8;
    out["bound_kind"] = "exact";
  } else if (all_ad) {
    bound = std::pow(1.0 - gamma_min,
                     static_cast<double>(*meta.r_certificate) / 2.0);
    out["bound_kind"] = "certificate";
  } else {
    bound = 1.0;
    formal = false;
    out["bound_kind"] = "none";
  }
  bool pass = emp.estimate <= bound + 4.0 * emp.std_error;
  out["bound"] = bound;
  out["formal"] = formal;
  out["pass"] = pass;
  std::cout << out.dump() << '\n';
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_gen_qaoa(std::size_t nodes, std::size_t rounds, double gamma,
                 std::uint64_t seed, const std::string &out_path) {
  pp::Graph g = pp::random_regular_graph(nodes, 3, seed);
  pp::Circuit c = pp::qaoa_circuit(g, rounds, pp::amplitude_damping(gamma));
  write_file_atomic(out_path, pp::circuit_to_json(c) + "\n");
  json summary{{"n", c.n},
               {"m", c.num_rotations()},
               {"edges", g.edges.size()},
               {"circuit_hash", pp::circuit_hash(c)},
               {"out", out_path}};
  std::cout << summary.dump() << '\n';
  return kExitOk;
}

int cmd_gen_random(std::size_t n, std::size_t m, double gamma,
                   std::uint64_t seed, bool clifford_words,
                   const std::string &channel_path,
                   const std::string &out_path) {
  pp::NormalFormChannel noise =
      channel_path.empty()
          ? pp::amplitude_damping(gamma)
          : pp::channel_from_json_text(read_file(channel_path));
  pp::RandomCircuitOptions opts;
  opts.single_qubit_random_cliffords = clifford_words;
  pp::Circuit c = pp::random_circuit(n, m, noise, seed, opts);
  write_file_atomic(out_path, pp::circuit_to_json(c) + "\n");
  json summary{{"n", c.n},
               {"m", c.num_rotations()},
               {"circuit_hash", pp::circuit_hash(c)},
               {"out", out_path}};
  std::cout << summary.dump() << '\n';
  return kExitOk;
}

int cmd_experiment(const std::string &name, const std::string &config_path,
                   const std::string &out_path, std::size_t threads,
                   bool threads_set) {
  pp::ExperimentConfig cfg = pp::config_from_json(read_file(config_path));
  if (threads_set) cfg.threads = threads;
  pp::ExperimentResult res;
  if (name == "r_vs_ell") {
    res = pp::run_r_vs_ell(cfg);
  } else if (name == "certificate") {
    res = pp::run_certificate_validation(cfg);
  } else if (name == "mc") {
    res = pp::run_mc_validation(cfg);
  } else if (name == "scaling") {
    res = pp::run_scaling(cfg);
  } else {
    throw pp::SchemaError(
        "experiment: unknown name (use r_vs_ell, certificate, mc, scaling)");
  }
  if (!out_path.empty()) write_file_atomic(out_path, res.csv);
  json summary{{"experiment", name},
               {"config", pp::config_hash(cfg)},
               {"pass", res.pass},
               {"note", res.note}};
  if (!out_path.empty()) summary["out"] = out_path;
  std::cout << summary.dump() << '\n';
  return res.pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Fourier surrogates for noisy parameterized Clifford+Rz "
               "circuits"};
  app.require_subcommand(1);

  std::string circuit_path, obs_text, out_path, surrogate_path, theta_path;
  std::string method = "ptm", config_path, channel_path, experiment_name;
  std::int64_t ell = -1;
  std::size_t trees = 1000, samples = 10000, threads = 0;
  std::size_t nodes = 8, rounds = 1, gen_n = 4, gen_m = 8;
  std::uint64_t seed = 1;
  double delta = 0.1, gamma = 0.1;
  bool clifford_words = false, exact = false;

  CLI::App *build = app.add_subcommand("build", "deterministic surrogate");
  build->add_option("-c,--circuit", circuit_path)->required();
  build->add_option("-o,--observable", obs_text)->required();
  build->add_option("--ell", ell, "split cut-off, >= 0");
  build->add_flag("--exact", exact, "untruncated tree, ignores --ell");
  build->add_option("--out", out_path);
  build->add_option("--threads", threads);

  CLI::App *sample = app.add_subcommand("sample", "Monte-Carlo surrogate");
  sample->add_option("-c,--circuit", circuit_path)->required();
  sample->add_option("-o,--observable", obs_text)->required();
  sample->add_option("--ell", ell)->required();
  sample->add_option("--trees", trees, "tree count K")
      ->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed);
  sample->add_option("--delta", delta);
  sample->add_option("--out", out_path);
  sample->add_option("--threads", threads);

  CLI::App *eval = app.add_subcommand("eval", "evaluate a surrogate file");
  eval->add_option("surrogate", surrogate_path)->required();
  eval->add_option("--theta", theta_path)->required();

  CLI::App *oracle = app.add_subcommand("oracle", "brute-force expectation");
  oracle->add_option("-c,--circuit", circuit_path)->required();
  oracle->add_option("-o,--observable", obs_text)->required();
  oracle->add_option("--theta", theta_path)->required();
  oracle->add_option("--method", method)
      ->check(CLI::IsMember({"ptm", "density"}));

  CLI::App *validate = app.add_subcommand(
      "validate", "empirical landscape error against the dense oracle");
  validate->add_option("surrogate", surrogate_path)->required();
  validate->add_option("-c,--circuit", circuit_path)->required();
  validate->add_option("--samples", samples)->check(CLI::PositiveNumber);
  validate->add_option("--seed", seed);
  validate->add_option("--delta", delta);

  CLI::App *gen = app.add_subcommand("gen", "instance generators");
  gen->require_subcommand(1);
  CLI::App *gen_qaoa = gen->add_subcommand("qaoa", "QAOA on a 3-regular graph");
  gen_qaoa->add_option("--nodes", nodes)->check(CLI::PositiveNumber);
  gen_qaoa->add_option("--rounds", rounds)->check(CLI::PositiveNumber);
  gen_qaoa->add_option("--gamma", gamma);
  gen_qaoa->add_option("--seed", seed);
  gen_qaoa->add_option("--out", out_path)->required();
  CLI::App *gen_random = gen->add_subcommand("random", "random circuit");
  gen_random->add_option("--n", gen_n)->check(CLI::PositiveNumber);
  gen_random->add_option("--m", gen_m)->check(CLI::PositiveNumber);
  gen_random->add_option("--gamma", gamma);
  gen_random->add_option("--channel", channel_path,
                         "channel JSON file overriding --gamma");
  gen_random->add_option("--seed", seed);
  gen_random->add_flag("--clifford-words", clifford_words);
  gen_random->add_option("--out", out_path)->required();

  CLI::App *experiment = app.add_subcommand("experiment", "scripted drivers");
  experiment->add_option("name", experiment_name)->required();
  experiment->add_option("--config", config_path)->required();
  experiment->add_option("--out", out_path);
  CLI::Option *exp_threads = experiment->add_option("--threads", threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitSchema;
  }

  try {
    if (threads == 0 && !build->count("--threads") &&
        !sample->count("--threads")) {
      threads = default_threads();
    }
    if (build->parsed()) {
      return cmd_build(circuit_path, obs_text, ell, exact, out_path, threads);
    }
    if (sample->parsed()) {
      return cmd_sample(circuit_path, obs_text, ell, trees, seed, delta,
                        out_path, threads);
    }
    if (eval->parsed()) return cmd_eval(surrogate_path, theta_path);
    if (oracle->parsed()) {
      return cmd_oracle(circuit_path, obs_text, theta_path, method);
    }
    if (validate->parsed()) {
      return cmd_validate(surrogate_path, circuit_path, samples, seed, delta);
    }
    if (gen_qaoa->parsed()) {
      return cmd_gen_qaoa(nodes, rounds, gamma, seed, out_path);
    }
    if (gen_random->parsed()) {
      return cmd_gen_random(gen_n, gen_m, gamma, seed, clifford_words,
                            channel_path, out_path);
    }
    if (experiment->parsed()) {
      return cmd_experiment(experiment_name, config_path, out_path, threads,
                            exp_threads->count() > 0);
    }
  } catch (const pp::SchemaError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSchema;
  } catch (const pp::AdmissibilityError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitAdmissibility;
  } catch (const pp::ResourceError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResources;
  }
  return kExitSchema;
}
