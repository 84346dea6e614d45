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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Pass criterion numbers to run a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <spdlog/spdlog.h>
#include <Eigen/QR>

#include "aqct/ansatz.hpp"
#include "aqct/cost.hpp"
#include "aqct/hamiltonian.hpp"
#include "aqct/pipeline.hpp"
#include "aqct/random.hpp"
#include "aqct/statevector.hpp"

using namespace aqct;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string printf_string(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

MatX random_unitary(Eigen::Index dim, Rng& rng) {
  MatX g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = cplx{rng.normal(), rng.normal()};
  Eigen::HouseholderQR<MatX> qr(g);
  MatX q = qr.householderQ() * MatX::Identity(dim, dim);
  const MatX r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

std::vector<double> random_angles(std::size_t count, Rng& rng) {
  std::vector<double> out(count);
  for (auto& a : out) a = rng.uniform(-kPi, kPi);
  return out;
}

Outcome oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(101);
  double worst = 0.0;
  for (int c = 0; c < 50; ++c) {
    const std::size_t n = 6 + static_cast<std::size_t>(c % 5);
    GateSchedule s;
    s.n = n;
    for (std::size_t d = 0; d < 8; ++d) {
      GateColumn singles{ColumnTag::kInitial, {}};
      for (std::size_t q = 0; q < n; ++q) singles.gates.push_back({q, random_unitary(2, rng)});
      s.columns.push_back(std::move(singles));
      GateColumn pairs{d % 2 ? ColumnTag::kOddFull : ColumnTag::kEvenFull, {}};
      for (std::size_t i = d % 2; i + 1 < n; i += 2) pairs.gates.push_back({i, random_unitary(4, rng)});
      s.columns.push_back(std::move(pairs));
    }
    std::string bits(n, '0');
    for (auto& b : bits) b = rng.uniform() < 0.5 ? '0' : '1';
    const Mps psi = apply_schedule(from_product_state(bits), s, {});
    const DenseState ref = sv_apply_schedule(sv_product_state(bits), s);
    const DenseState got = to_statevector(psi);
    worst = std::max(worst, (got - ref).cwiseAbs().maxCoeff());
  }
  const double secs = seconds_since(start);
  return {worst <= 1e-10 && secs < 120,
          printf_string("50 circuits, n = 6..10, max amplitude error %.2e, %.1fs", worst, secs)};
}

Outcome trotter_order() {
  const auto start = std::chrono::steady_clock::now();
  const auto ham = hamiltonian_preset("xxx", 8);
  const std::string bits = "10101010";
  const DenseState exact = sv_exact_evolution(ham, sv_product_state(bits), 1.0);
  std::vector<double> x, y;
  std::string errs;
  for (double dt : {0.2, 0.1, 0.05, 0.025}) {
    const auto steps = static_cast<std::size_t>(std::llround(1.0 / dt));
    const Mps psi = tebd_evolve(from_product_state(bits), ham, dt, steps, {});
    const double err = (to_statevector(psi) - exact).norm();
    x.push_back(std::log(dt));
    y.push_back(std::log(err));
    errs += printf_string(" %.2e", err);
  }
  const double mx = (x[0] + x[1] + x[2] + x[3]) / 4, my = (y[0] + y[1] + y[2] + y[3]) / 4;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < 4; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double slope = sxy / sxx;
  const double secs = seconds_since(start);
  return {std::abs(slope - 2.0) <= 0.3 && secs < 60,
          printf_string("log-log slope %.3f, errors%s, %.1fs", slope, errs.c_str(), secs)};
}

Outcome trotter_initialization() {
  const std::size_t n = 8, l = 4;
  const double dt = 2.0 / l;
  const std::string bits = "10101010";
  double worst_mps = 0, worst_dense = 0;
  for (const auto& preset : preset_names()) {
    const auto ham = hamiltonian_preset(preset, n, 1234);
    const Ansatz a = build_brickwork_ansatz(n, l, ham, dt);
    const auto theta = trotter_initialize(a, ham, dt, bits);
    const Mps trotter = apply_schedule(from_product_state(bits), build_trotter_schedule(ham, dt, l), {});
    worst_mps = std::max(worst_mps, cost_global(a, theta, trotter, {}).total);
    const DenseState v = sv_apply_ansatz(sv_product_state(std::string(n, '0')), a, theta);
    const DenseState t = sv_apply_schedule(sv_product_state(bits), build_trotter_schedule(ham, dt, l));
    worst_dense = std::max(worst_dense, 1 - sv_fidelity(v, t));
  }
  return {worst_mps <= 1e-8 && worst_dense <= 1e-10,
          printf_string("max global cost %.2e (MPS), max dense infidelity %.2e", worst_mps, worst_dense)};
}

Outcome count_and_depth() {
  const auto count = build_brickwork_ansatz(4, 2, hamiltonian_preset("xxx", 4), 0.5).num_parameters;
  std::size_t mismatches = 0, checked = 0;
  for (std::size_t n = 4; n <= 12; ++n)
    for (std::size_t l = 1; l <= 6; ++l) {
      const auto ham = hamiltonian_preset("xxx", n);
      ++checked;
      if (cnot_depth(build_brickwork_ansatz(n, l, ham, 0.1)) != trotter_cnot_depth(ham, l)) ++mismatches;
    }
  return {count == 108 && mismatches == 0,
          printf_string("%zu parameters for n = 4, l = 2; %zu/%zu depth mismatches", count, mismatches, checked)};
}

Outcome gradient_exactness() {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = 6, l = 2;
  Rng rng(505);
  double worst = 0, worst_env = 0;
  std::size_t params = 0;
  for (int draw = 0; draw < 100; ++draw) {
    const auto ham = hamiltonian_preset("random-xyz", n, 600 + draw);
    const Ansatz a = build_brickwork_ansatz(n, l, ham, 0.4);
    params = a.num_parameters;
    const auto theta = random_angles(a.num_parameters, rng);
    const Mps target = random_mps(n, 4, 700 + draw);
    CostConfig cfg = CostConfig::two_phase(n);
    const auto ps = gradient(a, theta, target, cfg);
    const auto fd = gradient_fd(a, theta, target, cfg, 1e-5);
    const auto env = cost_and_gradient(a, theta, target, cfg).gradient;
    for (std::size_t j = 0; j < ps.size(); ++j) {
      worst = std::max(worst, std::abs(ps[j] - fd[j]));
      worst_env = std::max(worst_env, std::abs(env[j] - ps[j]));
    }
  }
  return {worst <= 1e-6,
          printf_string("100 draws x %zu parameters, max |shift - fd| %.2e (environment method vs shift %.2e), %.1fs",
              params, worst, worst_env, seconds_since(start))};
}

Outcome local_cost_equivalence() {
  const std::size_t n = 6;
  Rng rng(606);
  double worst = 0;
  for (int inst = 0; inst < 20; ++inst) {
    const auto ham = hamiltonian_preset("random-xyz", n, 800 + inst);
    const Ansatz a = build_brickwork_ansatz(n, 1 + inst % 3, ham, 0.3);
    const auto theta = random_angles(a.num_parameters, rng);
    const Mps target = random_mps(n, 8, 900 + inst);
    CostConfig cfg;
    cfg.k = n;
    cfg.alphas.clear();
    for (std::size_t m = 1; m <= n; ++m) cfg.alphas.push_back(static_cast<double>(n - m) / n);
    const double truncated = cost_local_truncated(a, theta, target, cfg).total;
    worst = std::max(worst, std::abs(truncated - cost_full_local_bruteforce(a, theta, target)));
  }
  return {worst <= 1e-12, printf_string("20 instances, max difference %.2e", worst)};
}

Outcome variance_law() {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t samples = 100000;
  const double v81 = variance_probe(8, 1, samples, 7001);
  const double v82 = variance_probe(8, 2, samples, 7002);
  const double v91 = variance_probe(9, 1, samples, 7003);
  const double k_ratio = v82 / v81, n_ratio = v91 / v81;
  const bool k_ok = std::abs(k_ratio / (8.0 / 3.0) - 1) <= 0.3;
  const bool n_ok = std::abs(n_ratio / (3.0 / 8.0) - 1) <= 0.3;
  const double secs = seconds_since(start);
  return {k_ok && n_ok && secs < 300,
          printf_string("Var(n=8,k=2)/Var(n=8,k=1) = %.3f (8/3 +-30%%), Var(n=9,k=1)/Var(n=8,k=1) = %.3f "
              "(3/8 +-30%%), %.1fs",
              k_ratio, n_ratio, secs)};
}

bool trace_monotone(const OptimizationTrace& trace) {
  for (std::size_t i = 1; i < trace.records.size(); ++i) {
    const auto& a = trace.records[i - 1];
    const auto& b = trace.records[i];
    if (a.phase == b.phase && b.cost > a.cost) return false;
  }
  return true;
}

Outcome guaranteed_improvement() {
  bool ok = true;
  std::string detail;
  for (const auto& preset : preset_names()) {
    RunConfig cfg = preset_config(preset, 8);
    cfg.time = 2.0;
    cfg.layers = 4;
    cfg.optimizer.max_iter = 30;
    const RunReport r = run_aqctensor(cfg);
    if (r.status != "ok") return {false, preset + " failed: " + r.error};
    const bool better = *r.f_a1_gt > *r.f_t1_gt;
    const bool mono = trace_monotone(r.trace);
    ok = ok && better && mono;
    detail += printf_string("%s: %.6f vs %.6f%s; ", preset.c_str(), *r.f_a1_gt, *r.f_t1_gt,
                  mono ? "" : " (trace not monotone)");
  }
  return {ok, "F(a1, gt) vs F(t1, gt): " + detail};
}

Outcome half_depth_parity(bool criterion8_passed, std::ostream& log) {
  RunConfig cfg = preset_config("xxx", 8);
  cfg.time = 2.0;
  cfg.layers = 3;
  cfg.optimizer.max_iter = 30;
  const SweepResult s = experiment_half_depth(cfg);
  std::size_t close = 0;
  std::string gaps;
  log << "half-depth sweep (l = 3 ansatz vs 6-step Trotter):\n";
  s.write_csv(log);
  for (const auto& row : s.rows) {
    const double gap = row.f_t1double_gt - row.f_a1_gt;
    if (gap <= 0.01) ++close;
    gaps += printf_string(" t=%.1f:%+.1e", row.t, gap);
  }
  const bool met = close >= 3;
  const std::string detail =
      printf_string("within 0.01 at %zu/5 times; gap F(t1double) - F(a1):", close) + gaps;
  if (met) return {true, detail};
  return {criterion8_passed, detail + " (qualitative target not met; gap documented, criterion 8 " +
                                 (criterion8_passed ? "passed)" : "failed)")};
}

Outcome scale_smoke(std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  RunConfig cfg = preset_config("xxx", 50);
  cfg.layers = 3;
  cfg.evolution = TruncationPolicy::bounded(64);
  cfg.optimizer.max_iter = 30;
  const RunReport r = run_aqctensor(cfg);
  const auto j = to_json(r);
  const auto problems = check_report_schema(j);
  const double secs = seconds_since(start);
  std::ofstream("acceptance_scale_report.json") << j.dump(2) << '\n';
  log << "scale run report written to acceptance_scale_report.json\n";
  std::string detail = printf_string("n = 50, chi = 64, l = 3, %zu iterations, status %s, %zu schema problems, %.0fs",
                           r.iterations, r.status.c_str(), problems.size(), secs);
  if (r.status == "ok") detail += printf_string(", F(a1, gt) %.6f vs F(t1, gt) %.6f", *r.f_a1_gt, *r.f_t1_gt);
  return {r.status == "ok" && problems.empty() && r.iterations == 30 && secs < 3600, detail};
}

Outcome algorithm_one() {
  RunConfig cfg = preset_config("xxx", 8);
  cfg.time = 2.0;
  cfg.layers = 4;
  cfg.append_steps = 2;
  cfg.optimizer.max_iter = 30;
  const RunReport r = run_aqctensor(cfg);
  if (r.status != "ok" || !r.appended) return {false, "run failed: " + r.error};
  const auto& app = *r.appended;
  if (!app.verified) return {false, "ground truth exceeded the discarded-weight budget"};
  return {*app.f_final_gt >= *app.f_trotter_gt,
          printf_string("t + 2dt = %.2f: F(final, gt) %.6f vs F(%zu-step Trotter, gt) %.6f; depths %zu vs %zu",
              app.total_time, *app.f_final_gt, cfg.layers + 2, *app.f_trotter_gt, app.depth_final,
              app.depth_trotter)};
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_level(spdlog::level::warn);
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  auto wanted = [&](int c) { return only.empty() || only.count(c); };

  std::ofstream log("acceptance_log.txt");
  int failures = 0;
  bool c8 = false;
  auto report = [&](int c, const std::string& name, const std::function<Outcome()>& run) {
    if (!wanted(c)) return false;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const std::string line =
        printf_string("criterion %2d %-28s %s  ", c, name.c_str(), o.pass ? "PASS" : "FAIL") + o.detail;
    std::cout << line << std::endl;
    log << line << '\n';
    if (!o.pass) ++failures;
    return o.pass;
  };

  report(1, "oracle equivalence", oracle_equivalence);
  report(2, "trotter order", trotter_order);
  report(3, "trotter initialization", trotter_initialization);
  report(4, "parameter count and depth", count_and_depth);
  report(5, "gradient exactness", gradient_exactness);
  report(6, "local cost equivalence", local_cost_equivalence);
  report(7, "variance law", variance_law);
  c8 = report(8, "guaranteed improvement", guaranteed_improvement);
  if (wanted(9) && !wanted(8)) c8 = guaranteed_improvement().pass;
  report(9, "half-depth parity", [&] { return half_depth_parity(c8, log); });
  report(10, "scale smoke test", [&] { return scale_smoke(log); });
  report(11, "appended trotter steps", algorithm_one);
  return failures == 0 ? 0 : 1;
}
