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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "aqct/error.hpp"
#include "aqct/optimizer.hpp"

using namespace aqct;

namespace {

// f(x) = Σ c_i (x_i - i)^2 with an ill-conditioned diagonal.
Evaluation quadratic(std::span<const double> x) {
  Evaluation e;
  e.gradient.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double c = std::pow(10.0, static_cast<double>(i % 4) - 1.0);
    const double d = x[i] - static_cast<double>(i);
    e.cost += c * d * d;
    e.gradient[i] = 2 * c * d;
  }
  e.terminal = e.cost;
  return e;
}

Evaluation rosenbrock(std::span<const double> x) {
  const double a = 1 - x[0], b = x[1] - x[0] * x[0];
  Evaluation e;
  e.cost = a * a + 100 * b * b;
  e.terminal = e.cost;
  e.gradient = {-2 * a - 400 * x[0] * b, 200 * b};
  return e;
}

}  // namespace

TEST(Optimizer, converges_on_quadratic) {
  OptimizerConfig cfg;
  cfg.max_iter = 100;
  const auto r = minimize(quadratic, std::vector<double>(8, 3.0), cfg);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(r.theta[i], static_cast<double>(i), 1e-6);
  EXPECT_LT(r.best_terminal, 1e-12);
  EXPECT_LT(r.iterations, 60u);
}

TEST(Optimizer, converges_on_rosenbrock) {
  OptimizerConfig cfg;
  cfg.max_iter = 200;
  cfg.cost_tol = 0;
  const auto r = minimize(rosenbrock, {-1.2, 1.0}, cfg);
  EXPECT_NEAR(r.theta[0], 1.0, 1e-5);
  EXPECT_NEAR(r.theta[1], 1.0, 1e-5);
}

TEST(Optimizer, accepted_steps_are_monotone) {
  OptimizerConfig cfg;
  cfg.max_iter = 50;
  cfg.cost_tol = 0;
  const auto r = minimize(rosenbrock, {-1.2, 1.0}, cfg);
  for (std::size_t i = 1; i < r.trace.records.size(); ++i)
    EXPECT_LE(r.trace.records[i].cost, r.trace.records[i - 1].cost);
}

TEST(Optimizer, never_returns_worse_than_start) {
  OptimizerConfig cfg;
  cfg.max_iter = 5;
  // the phase objective disagrees with the terminal objective
  Objective f = [](std::span<const double> x) {
    Evaluation e = quadratic(x);
    e.terminal = std::abs(x[0] - 3.0);
    return e;
  };
  const auto r = minimize(f, std::vector<double>(4, 3.0), cfg);
  EXPECT_EQ(r.best_terminal, 0.0);
  EXPECT_EQ(r.theta[0], 3.0);
}

TEST(Optimizer, phases_hand_over) {
  OptimizerConfig cfg;
  cfg.max_iter = 20;
  Objective shifted = [](std::span<const double> x) {
    std::vector<double> y(x.begin(), x.end());
    y[0] -= 1.0;
    Evaluation e = quadratic(y);
    e.terminal = quadratic(x).cost;
    return e;
  };
  const std::vector<ObjectivePhase> phases{{10, shifted, {0.5}}, {10, quadratic, {0.0}}};
  const auto r = minimize(phases, std::vector<double>(3, 0.0), cfg);
  EXPECT_LE(r.iterations, 20u);
  EXPECT_NEAR(r.theta[0], 0.0, 1e-5);
  ASSERT_FALSE(r.trace.records.empty());
  EXPECT_EQ(r.trace.records.front().alphas, std::vector<double>{0.5});
  EXPECT_EQ(r.trace.records.back().alphas, std::vector<double>{0.0});
  EXPECT_EQ(r.trace.records.back().phase, 1u);
}

TEST(Optimizer, evaluator_error_aborts_with_partial_trace) {
  OptimizerConfig cfg;
  int calls = 0;
  Objective f = [&calls](std::span<const double> x) {
    if (++calls > 3) throw std::runtime_error("boom");
    return quadratic(x);
  };
  const auto r = minimize(f, std::vector<double>(4, 3.0), cfg);
  EXPECT_TRUE(r.aborted);
  EXPECT_NE(r.trace.stop_reason.find("boom"), std::string::npos);
  EXPECT_FALSE(r.trace.records.empty());
}

TEST(Optimizer, deterministic) {
  OptimizerConfig cfg;
  const auto a = minimize(rosenbrock, {-1.2, 1.0}, cfg);
  const auto b = minimize(rosenbrock, {-1.2, 1.0}, cfg);
  EXPECT_EQ(a.theta, b.theta);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Optimizer, respects_iteration_budget) {
  OptimizerConfig cfg;
  cfg.max_iter = 3;
  cfg.cost_tol = 0;
  const auto r = minimize(rosenbrock, {-1.2, 1.0}, cfg);
  EXPECT_EQ(r.iterations, 3u);
  EXPECT_EQ(r.trace.stop_reason, "max_iter");
}

TEST(Optimizer, csv_trace) {
  OptimizerConfig cfg;
  cfg.max_iter = 2;
  const auto r = minimize(quadratic, std::vector<double>(2, 1.0), cfg);
  std::ostringstream out;
  r.trace.write_csv(out);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "iter,cost,infidelity,grad_norm,alpha1,seconds");
}

TEST(Optimizer, config_validation) {
  OptimizerConfig cfg;
  cfg.memory = 0;
  EXPECT_THROW(cfg.validate(), InvalidInput);
  cfg = {};
  cfg.backtrack = 1.5;
  EXPECT_THROW(cfg.validate(), InvalidInput);
}
