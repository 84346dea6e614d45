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

#include "aqct/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "aqct/error.hpp"

namespace aqct {

namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(const Vec& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

struct Pair {
  Vec s, y;
  double rho;
};

// Two-loop recursion: returns -H g.
Vec lbfgs_direction(const std::deque<Pair>& memory, const Vec& g) {
  Vec q = g;
  std::vector<double> a(memory.size());
  for (std::size_t i = memory.size(); i-- > 0;) {
    a[i] = memory[i].rho * dot(memory[i].s, q);
    for (std::size_t j = 0; j < q.size(); ++j) q[j] -= a[i] * memory[i].y[j];
  }
  if (!memory.empty()) {
    const auto& last = memory.back();
    const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
    for (auto& v : q) v *= gamma;
  }
  for (std::size_t i = 0; i < memory.size(); ++i) {
    const double b = memory[i].rho * dot(memory[i].y, q);
    for (std::size_t j = 0; j < q.size(); ++j) q[j] += (a[i] - b) * memory[i].s[j];
  }
  for (auto& v : q) v = -v;
  return q;
}

Vec axpy(const Vec& x, double t, const Vec& d) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + t * d[i];
  return out;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (memory < 1) throw InvalidInput("optimizer memory must be positive");
  if (!(armijo > 0 && armijo < 1)) throw InvalidInput("armijo constant must lie in (0, 1)");
  if (!(curvature > armijo && curvature < 1))
    throw InvalidInput("curvature constant must lie in (armijo, 1)");
  if (!(backtrack > 0 && backtrack < 1)) throw InvalidInput("backtrack factor must lie in (0, 1)");
  if (!(grad_tol >= 0) || !(cost_tol >= 0)) throw InvalidInput("tolerances must be >= 0");
}

void OptimizationTrace::write_csv(std::ostream& out) const {
  out << "iter,cost,infidelity,grad_norm,alpha1,seconds\n";
  out << std::setprecision(12);
  for (const auto& r : records)
    out << r.iteration << ',' << r.cost << ',' << r.infidelity << ',' << r.grad_norm << ','
        << (r.alphas.empty() ? 0.0 : r.alphas[0]) << ',' << r.seconds << '\n';
}

OptimizationResult minimize(std::span<const ObjectivePhase> phases, std::vector<double> theta0,
                            const OptimizerConfig& cfg) {
  cfg.validate();
  if (phases.empty()) throw InvalidInput("no objective phases");
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  OptimizationResult result;
  result.theta = theta0;
  auto& trace = result.trace;
  Vec x = std::move(theta0);
  std::size_t total = 0;
  bool have_best = false;

  auto evaluate = [&](const Objective& f, const Vec& at) {
    ++trace.evaluations;
    Evaluation e = f(at);
    if (e.gradient.size() != at.size()) throw std::runtime_error("gradient has wrong length");
    if (!have_best || e.terminal < result.best_terminal) {
      result.best_terminal = e.terminal;
      result.theta = at;
      have_best = true;
    }
    return e;
  };

  try {
    for (std::size_t p = 0; p < phases.size(); ++p) {
      const auto& phase = phases[p];
      const bool last_phase = p + 1 == phases.size();
      Evaluation cur = evaluate(phase.objective, x);
      auto record = [&](bool fallback) {
        trace.records.push_back({total, p, cur.cost, cur.terminal,
                                 std::sqrt(dot(cur.gradient, cur.gradient)), phase.alphas,
                                 elapsed(), fallback});
      };
      record(false);
      std::deque<Pair> memory;
      bool handover = false;
      for (std::size_t it = 0; it < phase.iterations && total < cfg.max_iter; ++it) {
        if (max_abs(cur.gradient) <= cfg.grad_tol) {
          trace.stop_reason = "grad_tol";
          handover = true;
          break;
        }
        Vec d = lbfgs_direction(memory, cur.gradient);
        double slope = dot(d, cur.gradient);
        if (!(slope < 0)) {
          memory.clear();
          d = lbfgs_direction(memory, cur.gradient);
          slope = dot(d, cur.gradient);
        }
        double step = 1.0;
        if (memory.empty()) step = std::min(1.0, 1.0 / std::sqrt(dot(d, d)));

        bool accepted = false, fallback = false;
        Vec x_new;
        Evaluation next;
        for (std::size_t b = 0; b <= cfg.max_backtracks; ++b) {
          x_new = axpy(x, step, d);
          next = evaluate(phase.objective, x_new);
          if (std::isfinite(next.cost) && next.cost <= cur.cost + cfg.armijo * step * slope) {
            accepted = true;
            break;
          }
          step *= cfg.backtrack;
        }
        if (!accepted) {
          // normalized steepest-descent step of shrinking length
          const double gnorm = std::sqrt(dot(cur.gradient, cur.gradient));
          double len = 1e-2;
          for (int b = 0; b < 8 && !accepted; ++b, len *= 0.1) {
            x_new = axpy(x, -len / gnorm, cur.gradient);
            next = evaluate(phase.objective, x_new);
            accepted = std::isfinite(next.cost) && next.cost < cur.cost;
          }
          fallback = true;
          memory.clear();
          if (!accepted) {
            trace.stop_reason = "line_search_failed";
            handover = true;
            break;
          }
        }

        Pair pr{Vec(x.size()), Vec(x.size()), 0.0};
        for (std::size_t i = 0; i < x.size(); ++i) {
          pr.s[i] = x_new[i] - x[i];
          pr.y[i] = next.gradient[i] - cur.gradient[i];
        }
        const double sy = dot(pr.s, pr.y);
        if (!fallback && sy > 1e-14 * std::sqrt(dot(pr.s, pr.s) * dot(pr.y, pr.y))) {
          pr.rho = 1.0 / sy;
          memory.push_back(std::move(pr));
          if (memory.size() > cfg.memory) memory.pop_front();
        }
        const double decrease = cur.cost - next.cost;
        x = std::move(x_new);
        cur = std::move(next);
        ++total;
        record(fallback);
        if (decrease <= cfg.cost_tol * std::max(1.0, std::abs(cur.cost))) {
          trace.stop_reason = "cost_tol";
          handover = true;
          break;
        }
      }
      if (total >= cfg.max_iter) {
        if (!(handover && last_phase)) trace.stop_reason = "max_iter";
        break;
      }
      if (last_phase && !handover) trace.stop_reason = "max_iter";
    }
  } catch (const std::exception& e) {
    result.aborted = true;
    trace.stop_reason = std::string("evaluator error: ") + e.what();
  }
  result.iterations = total;
  return result;
}

OptimizationResult minimize(const Objective& objective, std::vector<double> theta0,
                            const OptimizerConfig& cfg) {
  const ObjectivePhase phase{cfg.max_iter, objective, {}};
  return minimize(std::span<const ObjectivePhase>(&phase, 1), std::move(theta0), cfg);
}

}  // namespace aqct
