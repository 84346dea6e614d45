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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aqct/ansatz.hpp"
#include "aqct/cost.hpp"
#include "aqct/hamiltonian.hpp"
#include "aqct/mps.hpp"
#include "aqct/optimizer.hpp"

namespace aqct {

/// Everything one compile run needs. Read from and echoed as JSON.
struct RunConfig {
  /// "xxx", "xxz", "random-xyz", or "explicit" (uses `hamiltonian`).
  std::string preset = "xxx";
  std::uint64_t seed = 1234;
  std::optional<XYZHamiltonian> hamiltonian;
  std::size_t n = 8;
  /// Empty means the Néel string 1010...
  std::string initial_state;
  double time = 2.0;
  std::size_t layers = 4;
  std::size_t append_steps = 0;
  /// Defaults to the compile step time / layers.
  std::optional<double> append_dt;
  /// Ground-truth and target step = compile step / refinement.
  std::size_t ground_truth_refinement = 10;
  TruncationPolicy evolution = TruncationPolicy::bounded(64);
  /// Defaults to `evolution`.
  std::optional<TruncationPolicy> cost_policy;
  /// Defaults to `evolution` with 4× the bond cap.
  std::optional<TruncationPolicy> ground_truth_policy;
  std::size_t k = 1;
  /// "two-phase", "global", "local", or "explicit" (uses `alpha_phases`).
  std::string alpha_schedule = "two-phase";
  std::vector<AlphaPhase> alpha_phases;
  OptimizerConfig optimizer;
  AnsatzOptions ansatz;
  /// "adjoint" or "parameter-shift".
  std::string gradient_method = "adjoint";
  /// Appended-step fidelities are marked unverified past this ground-truth discarded weight.
  double discarded_weight_budget = 1e-6;
  /// Sweep times; empty means five evenly spaced points up to `time`.
  std::vector<double> time_grid;
  /// "equal-depth" or "half-depth".
  std::string experiment = "equal-depth";
  std::size_t jobs = 1;

  void validate() const;

  XYZHamiltonian resolve_hamiltonian() const;
  std::string resolve_initial_state() const;
  double dt() const { return time / static_cast<double>(layers); }
  double resolve_append_dt() const { return append_dt.value_or(dt()); }
  TruncationPolicy resolve_cost_policy() const;
  TruncationPolicy resolve_ground_truth_policy() const;
  std::vector<AlphaPhase> resolve_alpha_phases() const;
  std::vector<double> resolve_time_grid() const;
};

void to_json(nlohmann::json& j, const RunConfig& cfg);
/// Missing keys keep their defaults; unknown keys are rejected.
void from_json(const nlohmann::json& j, RunConfig& cfg);
void to_json(nlohmann::json& j, const TruncationPolicy& p);
void from_json(const nlohmann::json& j, TruncationPolicy& p);

RunConfig load_run_config(const std::filesystem::path& path);

/// Preset names accepted by RunConfig::preset besides "explicit".
std::vector<std::string> preset_names();
RunConfig preset_config(const std::string& preset, std::size_t n = 8);

struct AppendedSteps {
  std::size_t steps = 0;
  double dt = 0.0;
  double total_time = 0.0;
  std::optional<double> f_final_gt;
  std::optional<double> f_trotter_gt;
  std::size_t depth_final = 0;
  std::size_t depth_trotter = 0;
  bool verified = false;
};

struct RunReport {
  /// "ok" or "failed".
  std::string status = "ok";
  std::string failed_stage;
  std::string error;
  nlohmann::json config;
  XYZHamiltonian hamiltonian;
  std::string initial_state;
  double time = 0.0;
  std::size_t layers = 0;
  std::size_t num_parameters = 0;
  std::vector<double> theta;

  std::optional<double> f_a1_gt;
  std::optional<double> f_t1_gt;
  std::optional<double> f_t1double_gt;
  std::optional<double> f_a1_target;
  std::optional<double> f_t1_target;
  std::optional<double> f_target_gt;

  std::size_t depth_ansatz = 0;
  std::size_t depth_trotter = 0;
  std::size_t depth_trotter_double = 0;

  std::map<std::string, std::size_t> max_chi;
  std::map<std::string, double> discarded_weight;
  std::map<std::string, double> seconds;

  OptimizationTrace trace;
  std::size_t iterations = 0;
  std::optional<AppendedSteps> appended;
};

nlohmann::json to_json(const RunReport& report);
/// Checks required keys and value types; returns the list of problems.
std::vector<std::string> check_report_schema(const nlohmann::json& j);

/// TEBD from psi0 to t with step dt_compile / refinement.
Mps ground_truth(const XYZHamiltonian& ham, const Mps& psi0, double t, double dt_compile,
                 const TruncationPolicy& policy, std::size_t refinement = 10);

/// TEBD target, Trotter-initialized compile, optional appended Trotter
/// steps, and fidelities against the ground truth. Stage failures return a
/// report with status "failed" and the stage name.
RunReport run_aqctensor(const RunConfig& cfg);

/// Rebuilds the ansatz of a run from its configuration.
Ansatz ansatz_for(const RunConfig& cfg);
/// Final circuit (U_trott(dt))^k V(θ) as primitive gates.
Circuit final_circuit(const RunConfig& cfg, std::span<const double> theta);

struct SweepRow {
  double t = 0.0;
  std::size_t depth_ansatz = 0;
  std::size_t depth_trotter = 0;
  double f_a1_gt = 0.0;
  double f_t1_gt = 0.0;
  double f_t1double_gt = 0.0;
  std::size_t max_chi = 0;
  std::size_t iters = 0;
  double seconds = 0.0;
};

struct SweepResult {
  std::string experiment;
  std::vector<SweepRow> rows;
  std::vector<RunReport> reports;

  /// Columns: t, depth_ansatz, depth_trotter, f_a1_gt, f_t1_gt, f_t1double_gt,
  /// max_chi, iters, seconds.
  void write_csv(std::ostream& out) const;
};

/// l-layer ansatz against the l-step Trotter circuit of equal CNOT depth.
SweepResult experiment_equal_depth(const RunConfig& cfg);
/// l-layer ansatz against the 2l-step Trotter circuit (twice the depth).
SweepResult experiment_half_depth(const RunConfig& cfg);

}  // namespace aqct
