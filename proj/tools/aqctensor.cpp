// Copyright 2026 The aqctensor Authors
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

// aqctensor command-line front end.
//
// Exit codes:
//   0  success
//   1  internal error
//   2  usage or configuration error
//   3  runtime failure in a pipeline stage
//   4  verification mismatch (verify, export-circuit round trip)
//
// Failures print one line to stderr:
//   error category=<usage|runtime|verify|internal> stage=<name> message="..."

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "aqct/ansatz.hpp"
#include "aqct/circuit.hpp"
#include "aqct/cost.hpp"
#include "aqct/error.hpp"
#include "aqct/hamiltonian.hpp"
#include "aqct/pipeline.hpp"
#include "aqct/random.hpp"
#include "aqct/statevector.hpp"

namespace fs = std::filesystem;
using namespace aqct;
using json = nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kUsage = 2, kRuntime = 3, kVerify = 4 };

struct Failure {
  ExitCode code;
  std::string category;
  std::string stage;
  std::string message;
};

struct Overrides {
  std::string config;
  std::string out = "aqct-out";
  std::string report;
  std::string log_level = "info";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n, layers, chi_max, max_iter, append_steps, jobs;
  std::optional<double> time, cutoff;
  std::optional<std::string> alpha_schedule, preset, experiment;
};

// Artifacts written under the output directory.
class Outputs {
 public:
  explicit Outputs(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  std::ofstream open(const std::string& name) {
    const fs::path path = dir_ / name;
    fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    files_.push_back(name);
    return out;
  }

  void write_json(const std::string& name, const json& j) { open(name) << j.dump(2) << '\n'; }

  void write_manifest(const std::string& command) {
    json j{{"command", command}, {"artifacts", files_}};
    j["artifacts"].push_back("manifest.json");
    std::ofstream(dir_ / "manifest.json") << j.dump(2) << '\n';
  }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

RunConfig effective_config(const Overrides& o) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : load_run_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (o.n) cfg.n = *o.n;
  if (o.layers) cfg.layers = *o.layers;
  if (o.time) cfg.time = *o.time;
  if (o.chi_max) cfg.evolution.chi_max = *o.chi_max;
  if (o.cutoff) cfg.evolution.cutoff = *o.cutoff;
  if (o.max_iter) cfg.optimizer.max_iter = *o.max_iter;
  if (o.alpha_schedule) cfg.alpha_schedule = *o.alpha_schedule;
  if (o.preset) cfg.preset = *o.preset;
  if (o.append_steps) cfg.append_steps = *o.append_steps;
  if (o.jobs) cfg.jobs = *o.jobs;
  if (o.experiment) cfg.experiment = *o.experiment;
  cfg.validate();
  return cfg;
}

void check_report(const RunReport& report) {
  if (report.status != "ok")
    throw Failure{kRuntime, "runtime", report.failed_stage, report.error};
}

void cmd_evolve(const RunConfig& cfg, Outputs& out) {
  const auto ham = cfg.resolve_hamiltonian();
  const std::string bits = cfg.resolve_initial_state();
  const auto start = std::chrono::steady_clock::now();
  Mps psi;
  try {
    psi = tebd_evolve(from_product_state(bits), ham, cfg.dt(), cfg.layers, cfg.evolution);
  } catch (const std::exception& e) {
    throw Failure{kRuntime, "runtime", "evolve", e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  spdlog::info("evolve: {} steps in {:.2f}s, max chi {}", cfg.layers, secs, psi.peak_bond());
  out.write_json("evolution.json", {{"config", cfg},
                                    {"hamiltonian", ham},
                                    {"initial_state", bits},
                                    {"time", cfg.time},
                                    {"dt", cfg.dt()},
                                    {"steps", cfg.layers},
                                    {"energy", energy(psi, ham)},
                                    {"total_sz", total_sz(psi)},
                                    {"max_chi", psi.peak_bond()},
                                    {"final_max_bond", psi.max_bond()},
                                    {"discarded_weight", psi.discarded_weight()},
                                    {"seconds", secs}});
}

void write_run(const RunConfig& cfg, const RunReport& report, Outputs& out, bool with_append) {
  out.write_json("report.json", to_json(report));
  {
    auto csv = out.open("trace.csv");
    report.trace.write_csv(csv);
  }
  check_report(report);
  const Circuit circuit =
      with_append ? final_circuit(cfg, report.theta) : ansatz_circuit(ansatz_for(cfg), report.theta);
  auto txt = out.open("circuit.txt");
  write_circuit(txt, circuit);
}

void cmd_run(RunConfig cfg, Outputs& out, bool compile_only) {
  if (compile_only) cfg.append_steps = 0;
  write_run(cfg, run_aqctensor(cfg), out, !compile_only);
}

void cmd_sweep(const RunConfig& cfg, Outputs& out) {
  SweepResult result;
  try {
    result = cfg.experiment == "half-depth" ? experiment_half_depth(cfg) : experiment_equal_depth(cfg);
  } catch (const StageError& e) {
    throw Failure{kRuntime, "runtime", e.stage(), e.what()};
  }
  {
    auto csv = out.open("sweep.csv");
    result.write_csv(csv);
  }
  for (std::size_t i = 0; i < result.reports.size(); ++i)
    out.write_json("reports/report_" + std::to_string(i) + ".json", to_json(result.reports[i]));
  for (const auto& r : result.reports) check_report(r);
}

void cmd_export(const std::string& report_path, Outputs& out) {
  if (report_path.empty()) throw Failure{kUsage, "usage", "", "export-circuit needs --report"};
  std::ifstream in(report_path);
  if (!in) throw Failure{kUsage, "usage", "", "cannot open report " + report_path};
  json j;
  RunConfig cfg;
  std::vector<double> theta;
  try {
    j = json::parse(in);
    cfg = j.at("config").get<RunConfig>();
    theta = j.at("theta").get<std::vector<double>>();
  } catch (const std::exception& e) {
    throw Failure{kUsage, "usage", "", "bad report: " + std::string(e.what())};
  }
  if (j.value("status", "") != "ok")
    throw Failure{kUsage, "usage", "", "report does not describe a completed run"};
  const Circuit circuit = final_circuit(cfg, theta);
  const std::string text = circuit_to_string(circuit);
  out.open("circuit.txt") << text;
  if (!(parse_circuit_string(text) == circuit))
    throw Failure{kVerify, "verify", "export", "circuit text did not round-trip"};
  spdlog::info("exported {} gates, CNOT depth {}", circuit.gates.size(), cnot_depth(circuit));
}

// Oracle-equivalence and gradient checks on small random instances.
void cmd_verify(const RunConfig& cfg, Outputs& out) {
  json checks = json::array();
  bool all = true;
  auto check = [&](const std::string& name, double value, double tol) {
    const bool pass = value <= tol;
    all = all && pass;
    checks.push_back({{"name", name}, {"value", value}, {"tolerance", tol}, {"pass", pass}});
    std::cout << (pass ? "PASS " : "FAIL ") << name << " " << value << " (tol " << tol << ")\n";
  };
  Rng rng(cfg.seed);
  const std::size_t n = 6;

  double amp = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto ham = random_xyz(n, 0.2, 1.2, rng.next());
    const Ansatz a = build_brickwork_ansatz(n, 2, ham, 0.3);
    std::vector<double> theta(a.num_parameters);
    for (auto& t : theta) t = rng.uniform(-kPi, kPi);
    const Mps psi = apply_ansatz(a, theta, from_product_state(std::string(n, '0')), {});
    const DenseState ref = sv_apply_ansatz(sv_product_state(std::string(n, '0')), a, theta);
    amp = std::max(amp, (to_statevector(psi) - ref).cwiseAbs().maxCoeff());
  }
  check("mps_vs_statevector_amplitude", amp, 1e-10);

  double init = 0.0;
  for (const auto& preset : preset_names()) {
    const auto ham = hamiltonian_preset(preset, n, cfg.seed);
    const Ansatz a = build_brickwork_ansatz(n, 3, ham, 0.4);
    const auto theta = trotter_initialize(a, ham, 0.4, "101010");
    const Mps t = apply_schedule(from_product_state("101010"), build_trotter_schedule(ham, 0.4, 3), {});
    init = std::max(init, cost_global(a, theta, t, {}).total);
  }
  check("trotter_initialization_cost", init, 1e-10);

  const auto ham = random_xyz(n, 0.2, 1.2, cfg.seed);
  const Ansatz a = build_brickwork_ansatz(n, 1, ham, 0.3);
  std::vector<double> theta(a.num_parameters);
  for (auto& t : theta) t = rng.uniform(-kPi, kPi);
  const Mps target = random_mps(n, 4, cfg.seed);
  const auto cost_cfg = CostConfig::two_phase(n);
  const auto ps = gradient(a, theta, target, cost_cfg);
  const auto fd = gradient_fd(a, theta, target, cost_cfg, 1e-5);
  const auto env = cost_and_gradient(a, theta, target, cost_cfg).gradient;
  double ps_fd = 0, env_ps = 0;
  for (std::size_t j = 0; j < ps.size(); ++j) {
    ps_fd = std::max(ps_fd, std::abs(ps[j] - fd[j]));
    env_ps = std::max(env_ps, std::abs(env[j] - ps[j]));
  }
  check("gradient_shift_vs_finite_difference", ps_fd, 1e-6);
  check("gradient_environment_vs_shift", env_ps, 1e-9);

  double depth = 0;
  for (std::size_t l = 1; l <= 4; ++l)
    depth += std::abs(static_cast<double>(cnot_depth(build_brickwork_ansatz(n, l, ham, 0.1))) -
                      static_cast<double>(trotter_cnot_depth(ham, l)));
  check("depth_equality", depth, 0);

  out.write_json("verify.json", {{"checks", checks}, {"pass", all}});
  if (!all) throw Failure{kVerify, "verify", "verify", "oracle checks failed"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aqctensor: compile time-evolution circuits with matrix product states"};
  app.require_subcommand(1, 1);
  Overrides o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output directory")->capture_default_str();
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--n", o.n, "number of qubits");
    sub->add_option("--layers", o.layers, "ansatz layers / Trotter steps");
    sub->add_option("--time", o.time, "total evolution time");
    sub->add_option("--chi-max", o.chi_max, "bond dimension cap of the evolution policy");
    sub->add_option("--cutoff", o.cutoff, "relative singular value cutoff");
    sub->add_option("--max-iter", o.max_iter, "optimizer iterations");
    sub->add_option("--alpha-schedule", o.alpha_schedule, "two-phase, global, local or explicit")
        ->check(CLI::IsMember({"two-phase", "global", "local", "explicit"}));
    sub->add_option("--preset", o.preset, "Hamiltonian family")
        ->check(CLI::IsMember({"random-xyz", "xxx", "xxz"}));
    sub->add_option("--append-steps", o.append_steps, "Trotter steps appended after the circuit");
    sub->add_option("--jobs", o.jobs, "parallel runs in sweeps");
    sub->add_option("--experiment", o.experiment, "equal-depth or half-depth")
        ->check(CLI::IsMember({"equal-depth", "half-depth"}));
    sub->add_option("--log-level", o.log_level, "trace, debug, info, warn, error or off")
        ->capture_default_str();
  };
  auto* evolve = app.add_subcommand("evolve", "TEBD evolution of the initial product state");
  auto* compile = app.add_subcommand("compile", "optimize the circuit without appended steps");
  auto* run = app.add_subcommand("run", "full pipeline: target, compile, append, compare");
  auto* sweep = app.add_subcommand("sweep", "equal- or half-depth experiment over a time grid");
  auto* verify = app.add_subcommand("verify", "oracle-equivalence and gradient checks");
  auto* exporter = app.add_subcommand("export-circuit", "write the final circuit of a report");
  for (auto* sub : {evolve, compile, run, sweep, verify, exporter}) add_common(sub);
  exporter->add_option("--report", o.report, "report.json of a completed run")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error category=usage stage= message=\"" << e.what() << "\"\n";
    return kUsage;
  }

  auto logger = spdlog::stderr_color_mt("aqctensor");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::from_str(o.log_level));

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    RunConfig cfg;
    try {
      cfg = effective_config(o);
    } catch (const InvalidInput& e) {
      throw Failure{kUsage, "usage", "config", e.what()};
    }
    Outputs out(o.out);
    out.write_json("effective_config.json", cfg);
    try {
      if (command == "evolve") cmd_evolve(cfg, out);
      if (command == "compile") cmd_run(cfg, out, true);
      if (command == "run") cmd_run(cfg, out, false);
      if (command == "sweep") cmd_sweep(cfg, out);
      if (command == "verify") cmd_verify(cfg, out);
      if (command == "export-circuit") cmd_export(o.report, out);
    } catch (...) {
      out.write_manifest(command);
      throw;
    }
    out.write_manifest(command);
  } catch (const Failure& f) {
    std::cerr << "error category=" << f.category << " stage=" << f.stage << " message=\""
              << f.message << "\"\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error category=internal stage= message=\"" << e.what() << "\"\n";
    return kInternal;
  }
  return kOk;
}
