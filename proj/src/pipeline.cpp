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

#include "aqct/pipeline.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "aqct/error.hpp"

namespace aqct {

namespace {

using json = nlohmann::json;

const std::set<std::string> kPresets{"xxx", "xxz", "random-xyz"};
const std::set<std::string> kAlphaSchedules{"two-phase", "global", "local", "explicit"};
const std::set<std::string> kGradientMethods{"adjoint", "parameter-shift"};
const std::set<std::string> kExperiments{"equal-depth", "half-depth"};

std::size_t times_saturating(std::size_t a, std::size_t b) {
  if (a == kUnboundedBond || b == 0) return a;
  return a > kUnboundedBond / b ? kUnboundedBond : a * b;
}

std::vector<double> local_weights(std::size_t n, std::size_t k) {
  std::vector<double> w;
  for (std::size_t m = 1; m <= k; ++m)
    w.push_back(static_cast<double>(n - m) / static_cast<double>(n));
  return w;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  if (!j.is_object()) throw InvalidInput(where + " must be an object");
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw InvalidInput("unknown key '" + key + "' in " + where);
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

void to_json(nlohmann::json& j, const OptimizerConfig& o) {
  j = json{{"max_iter", o.max_iter},   {"memory", o.memory},
           {"armijo", o.armijo},       {"curvature", o.curvature},
           {"backtrack", o.backtrack}, {"max_backtracks", o.max_backtracks},
           {"grad_tol", o.grad_tol},   {"cost_tol", o.cost_tol}};
}

void from_json(const nlohmann::json& j, OptimizerConfig& o) {
  reject_unknown(j,
                 {"max_iter", "memory", "armijo", "curvature", "backtrack", "max_backtracks",
                  "grad_tol", "cost_tol"},
                 "optimizer");
  if (j.contains("max_iter")) j.at("max_iter").get_to(o.max_iter);
  if (j.contains("memory")) j.at("memory").get_to(o.memory);
  if (j.contains("armijo")) j.at("armijo").get_to(o.armijo);
  if (j.contains("curvature")) j.at("curvature").get_to(o.curvature);
  if (j.contains("backtrack")) j.at("backtrack").get_to(o.backtrack);
  if (j.contains("max_backtracks")) j.at("max_backtracks").get_to(o.max_backtracks);
  if (j.contains("grad_tol")) j.at("grad_tol").get_to(o.grad_tol);
  if (j.contains("cost_tol")) j.at("cost_tol").get_to(o.cost_tol);
}

void to_json(json& j, const TruncationPolicy& p) {
  j = json{{"chi_max", p.chi_max == kUnboundedBond ? json(nullptr) : json(p.chi_max)},
           {"cutoff", p.cutoff},
           {"renormalize", p.renormalize}};
}

void from_json(const json& j, TruncationPolicy& p) {
  reject_unknown(j, {"chi_max", "cutoff", "renormalize"}, "truncation policy");
  if (j.contains("chi_max"))
    p.chi_max = j.at("chi_max").is_null() ? kUnboundedBond : j.at("chi_max").get<std::size_t>();
  if (j.contains("cutoff")) j.at("cutoff").get_to(p.cutoff);
  if (j.contains("renormalize")) j.at("renormalize").get_to(p.renormalize);
}

void to_json(json& j, const RunConfig& c) {
  json phases = json::array();
  for (const auto& p : c.alpha_phases) phases.push_back({{"fraction", p.fraction}, {"alphas", p.alphas}});
  j = json{{"preset", c.preset},
           {"seed", c.seed},
           {"hamiltonian", c.hamiltonian ? json(*c.hamiltonian) : json(nullptr)},
           {"n", c.n},
           {"initial_state", c.initial_state},
           {"time", c.time},
           {"layers", c.layers},
           {"append_steps", c.append_steps},
           {"append_dt", optional_number(c.append_dt)},
           {"ground_truth_refinement", c.ground_truth_refinement},
           {"evolution", c.evolution},
           {"cost_policy", c.cost_policy ? json(*c.cost_policy) : json(nullptr)},
           {"ground_truth_policy",
            c.ground_truth_policy ? json(*c.ground_truth_policy) : json(nullptr)},
           {"k", c.k},
           {"alpha_schedule", c.alpha_schedule},
           {"alpha_phases", phases},
           {"optimizer", c.optimizer},
           {"ansatz",
            {{"blocks_per_slot", c.ansatz.blocks_per_slot},
             {"trainable_fields", c.ansatz.trainable_fields}}},
           {"gradient_method", c.gradient_method},
           {"discarded_weight_budget", c.discarded_weight_budget},
           {"time_grid", c.time_grid},
           {"experiment", c.experiment},
           {"jobs", c.jobs}};
}

void from_json(const json& j, RunConfig& c) {
  reject_unknown(j,
                 {"preset", "seed", "hamiltonian", "n", "initial_state", "time", "layers",
                  "append_steps", "append_dt", "ground_truth_refinement", "evolution",
                  "cost_policy", "ground_truth_policy", "k", "alpha_schedule", "alpha_phases",
                  "optimizer", "ansatz", "gradient_method", "discarded_weight_budget",
                  "time_grid", "experiment", "jobs"},
                 "run config");
  auto get = [&j](const char* key, auto& out) {
    if (j.contains(key)) j.at(key).get_to(out);
  };
  get("preset", c.preset);
  get("seed", c.seed);
  if (j.contains("hamiltonian")) {
    if (j.at("hamiltonian").is_null())
      c.hamiltonian.reset();
    else
      c.hamiltonian = j.at("hamiltonian").get<XYZHamiltonian>();
  }
  get("n", c.n);
  get("initial_state", c.initial_state);
  get("time", c.time);
  get("layers", c.layers);
  get("append_steps", c.append_steps);
  if (j.contains("append_dt")) {
    if (j.at("append_dt").is_null())
      c.append_dt.reset();
    else
      c.append_dt = j.at("append_dt").get<double>();
  }
  get("ground_truth_refinement", c.ground_truth_refinement);
  if (j.contains("evolution")) from_json(j.at("evolution"), c.evolution);
  for (auto [key, slot] : {std::pair{"cost_policy", &c.cost_policy},
                           std::pair{"ground_truth_policy", &c.ground_truth_policy}}) {
    if (!j.contains(key)) continue;
    if (j.at(key).is_null()) {
      slot->reset();
    } else {
      TruncationPolicy p = c.evolution;
      from_json(j.at(key), p);
      *slot = p;
    }
  }
  get("k", c.k);
  get("alpha_schedule", c.alpha_schedule);
  if (j.contains("alpha_phases")) {
    c.alpha_phases.clear();
    for (const auto& p : j.at("alpha_phases")) {
      reject_unknown(p, {"fraction", "alphas"}, "alpha phase");
      c.alpha_phases.push_back({p.at("fraction").get<double>(), p.at("alphas").get<std::vector<double>>()});
    }
  }
  if (j.contains("optimizer")) from_json(j.at("optimizer"), c.optimizer);
  if (j.contains("ansatz")) {
    const auto& a = j.at("ansatz");
    reject_unknown(a, {"blocks_per_slot", "trainable_fields"}, "ansatz");
    if (a.contains("blocks_per_slot")) a.at("blocks_per_slot").get_to(c.ansatz.blocks_per_slot);
    if (a.contains("trainable_fields")) a.at("trainable_fields").get_to(c.ansatz.trainable_fields);
  }
  get("gradient_method", c.gradient_method);
  get("discarded_weight_budget", c.discarded_weight_budget);
  get("time_grid", c.time_grid);
  get("experiment", c.experiment);
  get("jobs", c.jobs);
}

void RunConfig::validate() const {
  if (n < 2) throw InvalidInput("n must be at least 2");
  if (!(time > 0) || !std::isfinite(time)) throw InvalidInput("time must be positive");
  if (layers < 1) throw InvalidInput("layers must be at least 1");
  if (append_dt && !(*append_dt > 0)) throw InvalidInput("append_dt must be positive");
  if (ground_truth_refinement < 1) throw InvalidInput("ground_truth_refinement must be >= 1");
  if (preset == "explicit") {
    if (!hamiltonian) throw InvalidInput("preset 'explicit' needs a hamiltonian");
    hamiltonian->validate();
    if (hamiltonian->n != n) throw InvalidInput("hamiltonian.n differs from n");
  } else if (!kPresets.count(preset)) {
    throw InvalidInput("unknown preset '" + preset + "'");
  }
  if (!initial_state.empty()) {
    if (initial_state.size() != n) throw InvalidInput("initial_state length differs from n");
    if (initial_state.find_first_not_of("01") != std::string::npos)
      throw InvalidInput("initial_state must be a bit string");
  }
  evolution.validate();
  resolve_cost_policy().validate();
  resolve_ground_truth_policy().validate();
  if (k < 1 || k > n) throw InvalidInput("k must lie in [1, n]");
  if (!kAlphaSchedules.count(alpha_schedule))
    throw InvalidInput("unknown alpha_schedule '" + alpha_schedule + "'");
  if (alpha_schedule == "explicit" && alpha_phases.empty())
    throw InvalidInput("alpha_schedule 'explicit' needs alpha_phases");
  CostConfig probe;
  probe.k = k;
  probe.alphas.assign(k, 0.0);
  probe.schedule = resolve_alpha_phases();
  probe.policy = resolve_cost_policy();
  probe.validate(n);
  optimizer.validate();
  if (ansatz.blocks_per_slot != 3)
    throw InvalidInput("Trotter-initialized runs need blocks_per_slot = 3");
  if (!kGradientMethods.count(gradient_method))
    throw InvalidInput("unknown gradient_method '" + gradient_method + "'");
  if (!(discarded_weight_budget >= 0)) throw InvalidInput("discarded_weight_budget must be >= 0");
  for (double t : time_grid)
    if (!(t > 0)) throw InvalidInput("time_grid entries must be positive");
  if (!kExperiments.count(experiment)) throw InvalidInput("unknown experiment '" + experiment + "'");
  if (jobs < 1) throw InvalidInput("jobs must be at least 1");
}

XYZHamiltonian RunConfig::resolve_hamiltonian() const {
  if (preset == "explicit") {
    if (!hamiltonian) throw InvalidInput("preset 'explicit' needs a hamiltonian");
    return *hamiltonian;
  }
  return hamiltonian_preset(preset, n, seed);
}

std::string RunConfig::resolve_initial_state() const {
  if (!initial_state.empty()) return initial_state;
  std::string bits(n, '0');
  for (std::size_t i = 0; i < n; i += 2) bits[i] = '1';
  return bits;
}

TruncationPolicy RunConfig::resolve_cost_policy() const { return cost_policy.value_or(evolution); }

TruncationPolicy RunConfig::resolve_ground_truth_policy() const {
  if (ground_truth_policy) return *ground_truth_policy;
  TruncationPolicy p = evolution;
  p.chi_max = times_saturating(p.chi_max, 4);
  return p;
}

std::vector<AlphaPhase> RunConfig::resolve_alpha_phases() const {
  const std::vector<double> zeros(k, 0.0);
  if (alpha_schedule == "two-phase") return {{0.5, local_weights(n, k)}, {0.5, zeros}};
  if (alpha_schedule == "global") return {{1.0, zeros}};
  if (alpha_schedule == "local") return {{1.0, local_weights(n, k)}};
  return alpha_phases;
}

std::vector<double> RunConfig::resolve_time_grid() const {
  if (!time_grid.empty()) return time_grid;
  std::vector<double> grid;
  for (int i = 1; i <= 5; ++i) grid.push_back(time * i / 5.0);
  return grid;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config " + path.string());
  RunConfig cfg;
  try {
    const json j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    cfg = j.get<RunConfig>();
  } catch (const json::exception& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
  return cfg;
}

std::vector<std::string> preset_names() { return {kPresets.begin(), kPresets.end()}; }

RunConfig preset_config(const std::string& preset, std::size_t n) {
  if (!kPresets.count(preset)) throw InvalidInput("unknown preset '" + preset + "'");
  RunConfig cfg;
  cfg.preset = preset;
  cfg.n = n;
  return cfg;
}

Mps ground_truth(const XYZHamiltonian& ham, const Mps& psi0, double t, double dt_compile,
                 const TruncationPolicy& policy, std::size_t refinement) {
  if (!(t >= 0) || !(dt_compile > 0) || refinement < 1)
    throw InvalidInput("ground truth needs t >= 0, dt > 0 and refinement >= 1");
  const auto steps =
      static_cast<std::size_t>(std::llround(t / dt_compile * static_cast<double>(refinement)));
  if (steps == 0) return psi0;
  return tebd_evolve(psi0, ham, t / static_cast<double>(steps), steps, policy);
}

Ansatz ansatz_for(const RunConfig& cfg) {
  return build_brickwork_ansatz(cfg.n, cfg.layers, cfg.resolve_hamiltonian(), cfg.dt(), cfg.ansatz);
}

Circuit final_circuit(const RunConfig& cfg, std::span<const double> theta) {
  Circuit circuit = ansatz_circuit(ansatz_for(cfg), theta);
  if (cfg.append_steps > 0) {
    const Circuit tail =
        trotter_circuit(cfg.resolve_hamiltonian(), cfg.resolve_append_dt(), cfg.append_steps);
    circuit.append(tail);
  }
  return circuit;
}

namespace {

std::vector<ObjectivePhase> build_phases(const RunConfig& cfg, const Ansatz& ansatz,
                                         const Mps& target) {
  const auto plan = cfg.resolve_alpha_phases();
  const std::size_t budget = cfg.optimizer.max_iter;
  std::vector<ObjectivePhase> phases;
  std::size_t used = 0;
  for (std::size_t p = 0; p < plan.size(); ++p) {
    std::size_t iters = p + 1 == plan.size()
                            ? budget - std::min(used, budget)
                            : static_cast<std::size_t>(std::llround(plan[p].fraction * budget));
    iters = std::min(iters, budget - std::min(used, budget));
    used += iters;
    CostConfig cost;
    cost.k = cfg.k;
    cost.alphas = plan[p].alphas;
    cost.policy = cfg.resolve_cost_policy();
    Objective objective;
    if (cfg.gradient_method == "adjoint") {
      objective = [&ansatz, &target, cost](std::span<const double> x) {
        auto cg = cost_and_gradient(ansatz, x, target, cost);
        return Evaluation{cg.value.total, cg.value.infidelity_term, std::move(cg.gradient)};
      };
    } else {
      objective = [&ansatz, &target, cost](std::span<const double> x) {
        const auto v = cost_local_truncated(ansatz, x, target, cost);
        return Evaluation{v.total, v.infidelity_term, gradient(ansatz, x, target, cost)};
      };
    }
    phases.push_back({iters, std::move(objective), plan[p].alphas});
  }
  return phases;
}

}  // namespace

RunReport run_aqctensor(const RunConfig& cfg) {
  RunReport report;
  report.config = cfg;
  std::string stage = "config";
  const Stopwatch total;
  try {
    cfg.validate();
    const XYZHamiltonian ham = cfg.resolve_hamiltonian();
    const std::string bits = cfg.resolve_initial_state();
    report.hamiltonian = ham;
    report.initial_state = bits;
    report.time = cfg.time;
    report.layers = cfg.layers;
    const double dt = cfg.dt();
    const Mps psi0 = from_product_state(bits);
    const TruncationPolicy gt_policy = cfg.resolve_ground_truth_policy();

    stage = "target";
    Stopwatch watch;
    const Mps target = ground_truth(ham, psi0, cfg.time, dt, cfg.evolution, cfg.ground_truth_refinement);
    report.seconds["target"] = watch.seconds();
    report.max_chi["target"] = target.peak_bond();
    report.discarded_weight["target"] = target.discarded_weight();
    spdlog::info("target: {:.2f}s, max chi {}", report.seconds["target"], target.peak_bond());

    stage = "ground_truth";
    watch = Stopwatch{};
    const Mps gt = ground_truth(ham, psi0, cfg.time, dt, gt_policy, cfg.ground_truth_refinement);
    report.seconds["ground_truth"] = watch.seconds();
    report.max_chi["ground_truth"] = gt.peak_bond();
    report.discarded_weight["ground_truth"] = gt.discarded_weight();
    report.f_target_gt = fidelity(target, gt);
    spdlog::info("ground truth: {:.2f}s, max chi {}", report.seconds["ground_truth"], gt.peak_bond());

    stage = "compile";
    watch = Stopwatch{};
    const Ansatz ansatz = build_brickwork_ansatz(cfg.n, cfg.layers, ham, dt, cfg.ansatz);
    report.num_parameters = ansatz.num_parameters;
    const ParamVector theta0 = trotter_initialize(ansatz, ham, dt, bits);
    const auto phases = build_phases(cfg, ansatz, target);
    OptimizationResult opt = minimize(phases, theta0, cfg.optimizer);
    if (opt.aborted) throw StageError("compile", opt.trace.stop_reason);
    report.theta = opt.theta;
    report.trace = opt.trace;
    report.iterations = opt.iterations;
    const Mps zero = from_product_state(std::string(cfg.n, '0'));
    const Mps a1 = apply_ansatz(ansatz, opt.theta, zero, cfg.evolution);
    report.seconds["compile"] = watch.seconds();
    report.max_chi["ansatz_state"] = a1.peak_bond();
    report.discarded_weight["ansatz_state"] = a1.discarded_weight();
    report.f_a1_gt = fidelity(a1, gt);
    report.f_a1_target = fidelity(a1, target);
    report.depth_ansatz = cnot_depth(ansatz);
    spdlog::info("compile: {:.2f}s, {} iterations, {} evaluations, stop: {}",
                 report.seconds["compile"], opt.iterations, opt.trace.evaluations,
                 opt.trace.stop_reason);

    stage = "trotter";
    watch = Stopwatch{};
    const Mps t1 = apply_schedule(psi0, build_trotter_schedule(ham, dt, cfg.layers), cfg.evolution);
    const Mps t1double =
        apply_schedule(psi0, build_trotter_schedule(ham, dt / 2, 2 * cfg.layers), cfg.evolution);
    report.f_t1_gt = fidelity(t1, gt);
    report.f_t1_target = fidelity(t1, target);
    report.f_t1double_gt = fidelity(t1double, gt);
    report.depth_trotter = trotter_cnot_depth(ham, cfg.layers);
    report.depth_trotter_double = trotter_cnot_depth(ham, 2 * cfg.layers);
    report.max_chi["trotter"] = std::max(t1.peak_bond(), t1double.peak_bond());
    report.seconds["trotter"] = watch.seconds();
    spdlog::info("trotter: f_a1_gt {:.6f}, f_t1_gt {:.6f}, f_t1double_gt {:.6f}", *report.f_a1_gt,
                 *report.f_t1_gt, *report.f_t1double_gt);

    if (cfg.append_steps > 0) {
      stage = "append";
      watch = Stopwatch{};
      AppendedSteps app;
      app.steps = cfg.append_steps;
      app.dt = cfg.resolve_append_dt();
      const double span_t = app.dt * static_cast<double>(app.steps);
      app.total_time = cfg.time + span_t;
      const Mps final_state =
          apply_schedule(a1, build_trotter_schedule(ham, app.dt, app.steps), cfg.evolution);
      const Mps gt_ext = ground_truth(ham, gt, span_t, app.dt, gt_policy, cfg.ground_truth_refinement);
      const std::size_t trotter_steps = cfg.layers + app.steps;
      const Mps trotter = apply_schedule(
          psi0,
          build_trotter_schedule(ham, app.total_time / static_cast<double>(trotter_steps), trotter_steps),
          cfg.evolution);
      app.depth_final = cnot_depth(final_circuit(cfg, opt.theta));
      app.depth_trotter = trotter_cnot_depth(ham, trotter_steps);
      app.verified = gt_ext.discarded_weight() <= cfg.discarded_weight_budget;
      if (app.verified) {
        app.f_final_gt = fidelity(final_state, gt_ext);
        app.f_trotter_gt = fidelity(trotter, gt_ext);
      }
      report.max_chi["ground_truth_extended"] = gt_ext.peak_bond();
      report.discarded_weight["ground_truth_extended"] = gt_ext.discarded_weight();
      report.max_chi["appended"] = final_state.peak_bond();
      report.seconds["append"] = watch.seconds();
      report.appended = app;
      if (app.verified)
        spdlog::info("append: f_final_gt {:.6f}, f_trotter_gt {:.6f}", *app.f_final_gt,
                     *app.f_trotter_gt);
      else
        spdlog::warn("append: ground truth discarded weight {:.3g} exceeds budget, unverified",
                     gt_ext.discarded_weight());
    }
  } catch (const std::exception& e) {
    report.status = "failed";
    const auto* tagged = dynamic_cast<const StageError*>(&e);
    report.failed_stage = tagged ? tagged->stage() : stage;
    report.error = e.what();
    spdlog::error("stage {} failed: {}", report.failed_stage, report.error);
  }
  report.seconds["total"] = total.seconds();
  return report;
}

json to_json(const RunReport& r) {
  json trace = json::array();
  for (const auto& t : r.trace.records)
    trace.push_back({{"iter", t.iteration},
                     {"phase", t.phase},
                     {"cost", t.cost},
                     {"infidelity", t.infidelity},
                     {"grad_norm", t.grad_norm},
                     {"alphas", t.alphas},
                     {"seconds", t.seconds},
                     {"fallback_step", t.fallback_step}});
  json appended = nullptr;
  if (r.appended) {
    const auto& a = *r.appended;
    appended = {{"steps", a.steps},
                {"dt", a.dt},
                {"total_time", a.total_time},
                {"status", a.verified ? "verified" : "unverified"},
                {"f_final_gt", optional_number(a.f_final_gt)},
                {"f_trotter_gt", optional_number(a.f_trotter_gt)},
                {"depth_final", a.depth_final},
                {"depth_trotter", a.depth_trotter}};
  }
  json j{{"status", r.status},
         {"config", r.config},
         {"hamiltonian", r.hamiltonian},
         {"initial_state", r.initial_state},
         {"state_preparation", "initial rotations acting on |0...0>"},
         {"seed", r.config.value("seed", json(nullptr))},
         {"time", r.time},
         {"layers", r.layers},
         {"num_parameters", r.num_parameters},
         {"theta", r.theta},
         {"fidelities",
          {{"a1_gt", optional_number(r.f_a1_gt)},
           {"t1_gt", optional_number(r.f_t1_gt)},
           {"t1double_gt", optional_number(r.f_t1double_gt)},
           {"a1_target", optional_number(r.f_a1_target)},
           {"t1_target", optional_number(r.f_t1_target)},
           {"target_gt", optional_number(r.f_target_gt)}}},
         {"depths",
          {{"ansatz", r.depth_ansatz},
           {"trotter", r.depth_trotter},
           {"trotter_double", r.depth_trotter_double}}},
         {"max_chi", r.max_chi},
         {"discarded_weight", r.discarded_weight},
         {"seconds", r.seconds},
         {"optimization",
          {{"iterations", r.iterations},
           {"evaluations", r.trace.evaluations},
           {"stop_reason", r.trace.stop_reason},
           {"trace", trace}}},
         {"appended", appended}};
  if (r.status != "ok") {
    j["failed_stage"] = r.failed_stage;
    j["error"] = r.error;
  }
  return j;
}

std::vector<std::string> check_report_schema(const json& j) {
  std::vector<std::string> problems;
  if (!j.is_object()) return {"report is not an object"};
  auto need = [&](const json& obj, const std::string& key, json::value_t type,
                  const std::string& path) -> const json* {
    if (!obj.contains(key)) {
      problems.push_back("missing " + path + key);
      return nullptr;
    }
    const auto& v = obj.at(key);
    const bool number = type == json::value_t::number_float;
    const bool ok = number ? v.is_number()
                           : (type == json::value_t::number_unsigned ? v.is_number_unsigned()
                                                                     : v.type() == type);
    if (!ok) {
      problems.push_back(path + key + " has the wrong type");
      return nullptr;
    }
    return &v;
  };
  using vt = json::value_t;
  const json* status = need(j, "status", vt::string, "");
  need(j, "config", vt::object, "");
  need(j, "hamiltonian", vt::object, "");
  need(j, "initial_state", vt::string, "");
  need(j, "time", vt::number_float, "");
  need(j, "layers", vt::number_unsigned, "");
  need(j, "num_parameters", vt::number_unsigned, "");
  need(j, "theta", vt::array, "");
  need(j, "max_chi", vt::object, "");
  need(j, "discarded_weight", vt::object, "");
  need(j, "seconds", vt::object, "");
  if (const json* f = need(j, "fidelities", vt::object, "")) {
    for (const char* key : {"a1_gt", "t1_gt", "t1double_gt", "a1_target", "t1_target", "target_gt"}) {
      if (!f->contains(key)) {
        problems.push_back(std::string("missing fidelities.") + key);
        continue;
      }
      const auto& v = f->at(key);
      if (v.is_null()) continue;
      if (!v.is_number() || v.get<double>() < 0 || v.get<double>() > 1 + 1e-9)
        problems.push_back(std::string("fidelities.") + key + " is not in [0, 1]");
    }
  }
  if (const json* d = need(j, "depths", vt::object, "")) {
    need(*d, "ansatz", vt::number_unsigned, "depths.");
    need(*d, "trotter", vt::number_unsigned, "depths.");
    need(*d, "trotter_double", vt::number_unsigned, "depths.");
  }
  if (const json* o = need(j, "optimization", vt::object, "")) {
    need(*o, "iterations", vt::number_unsigned, "optimization.");
    need(*o, "stop_reason", vt::string, "optimization.");
    need(*o, "trace", vt::array, "optimization.");
  }
  if (!j.contains("appended")) problems.push_back("missing appended");
  if (status && status->get<std::string>() == "ok") {
    for (const char* key : {"a1_gt", "t1_gt"})
      if (j.contains("fidelities") && j["fidelities"].is_object() &&
          j["fidelities"].value(key, json(nullptr)).is_null())
        problems.push_back(std::string("completed run lacks fidelities.") + key);
  } else if (status) {
    need(j, "failed_stage", vt::string, "");
    need(j, "error", vt::string, "");
  }
  return problems;
}

void SweepResult::write_csv(std::ostream& out) const {
  out << "t,depth_ansatz,depth_trotter,f_a1_gt,f_t1_gt,f_t1double_gt,max_chi,iters,seconds\n";
  out << std::setprecision(12);
  for (const auto& r : rows)
    out << r.t << ',' << r.depth_ansatz << ',' << r.depth_trotter << ',' << r.f_a1_gt << ','
        << r.f_t1_gt << ',' << r.f_t1double_gt << ',' << r.max_chi << ',' << r.iters << ','
        << r.seconds << '\n';
}

namespace {

SweepResult run_sweep(const RunConfig& cfg, bool half_depth) {
  cfg.validate();
  const auto grid = cfg.resolve_time_grid();
  std::vector<RunConfig> configs;
  for (double t : grid) {
    RunConfig c = cfg;
    c.time = t;
    c.append_steps = 0;
    c.time_grid.clear();
    configs.push_back(std::move(c));
  }

  std::vector<RunReport> reports(configs.size());
  const std::size_t workers = std::min(cfg.jobs, configs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < configs.size(); ++i) reports[i] = run_aqctensor(configs[i]);
  } else {
    std::vector<std::future<void>> pool;
    std::atomic<std::size_t> next{0};
    for (std::size_t w = 0; w < workers; ++w)
      pool.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) reports[i] = run_aqctensor(configs[i]);
      }));
    for (auto& f : pool) f.get();
  }

  SweepResult result;
  result.experiment = half_depth ? "half-depth" : "equal-depth";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    SweepRow row;
    row.t = grid[i];
    row.depth_ansatz = r.depth_ansatz;
    row.depth_trotter = half_depth ? r.depth_trotter_double : r.depth_trotter;
    if (r.status == "ok" && !half_depth && r.depth_ansatz != r.depth_trotter)
      throw StageError("sweep", "ansatz and Trotter depths differ at equal depth");
    row.f_a1_gt = r.f_a1_gt.value_or(nan);
    row.f_t1_gt = r.f_t1_gt.value_or(nan);
    row.f_t1double_gt = r.f_t1double_gt.value_or(nan);
    for (const auto& [name, chi] : r.max_chi) row.max_chi = std::max(row.max_chi, chi);
    row.iters = r.iterations;
    row.seconds = r.seconds.count("total") ? r.seconds.at("total") : 0.0;
    result.rows.push_back(row);
  }
  result.reports = std::move(reports);
  return result;
}

}  // namespace

SweepResult experiment_equal_depth(const RunConfig& cfg) { return run_sweep(cfg, false); }

SweepResult experiment_half_depth(const RunConfig& cfg) { return run_sweep(cfg, true); }

}  // namespace aqct
