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
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace aqct {

struct OptimizerConfig {
  std::size_t max_iter = 30;
  /// Number of stored (s, y) pairs.
  std::size_t memory = 8;
  /// Sufficient-decrease constant of the Armijo condition.
  double armijo = 1e-4;
  /// Curvature constant; pairs failing sᵀy > 0 are skipped, and the value is
  /// reported for diagnostics only (backtracking never enforces it).
  double curvature = 0.9;
  double backtrack = 0.5;
  std::size_t max_backtracks = 40;
  double grad_tol = 1e-8;
  double cost_tol = 1e-12;

  void validate() const;
};

struct Evaluation {
  double cost = 0.0;
  /// Value under the terminal objective (the true infidelity); used for
  /// best-seen tracking across phases.
  double terminal = 0.0;
  std::vector<double> gradient;
};

using Objective = std::function<Evaluation(std::span<const double>)>;

/// Objective in force for a number of iterations.
struct ObjectivePhase {
  std::size_t iterations = 0;
  Objective objective;
  /// Echoed into the trace.
  std::vector<double> alphas;
};

struct TraceRecord {
  std::size_t iteration = 0;
  std::size_t phase = 0;
  double cost = 0.0;
  double infidelity = 0.0;
  double grad_norm = 0.0;
  std::vector<double> alphas;
  double seconds = 0.0;
  bool fallback_step = false;
};

struct OptimizationTrace {
  std::vector<TraceRecord> records;
  std::string stop_reason;
  std::size_t evaluations = 0;

  /// Columns: iter, cost, infidelity, grad_norm, alpha1, seconds.
  void write_csv(std::ostream& out) const;
};

struct OptimizationResult {
  std::vector<double> theta;
  /// Terminal objective at theta; never above the value at theta0.
  double best_terminal = 0.0;
  OptimizationTrace trace;
  std::size_t iterations = 0;
  bool aborted = false;
};

/// L-BFGS with backtracking line search. Each phase restarts the curvature
/// memory. Stops at max_iter (summed over phases), or when the last phase
/// meets grad_tol (∞-norm) or cost_tol; an earlier phase that converges
/// hands over to the next one. Returns the best point seen under the
/// terminal objective. An evaluator exception aborts with the partial trace.
OptimizationResult minimize(std::span<const ObjectivePhase> phases, std::vector<double> theta0,
                            const OptimizerConfig& cfg);

OptimizationResult minimize(const Objective& objective, std::vector<double> theta0,
                            const OptimizerConfig& cfg);

}  // namespace aqct
