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

#include "aqct/cost.hpp"

#include <cmath>
#include <string>

#include "aqct/error.hpp"
#include "aqct/hamiltonian.hpp"
#include "aqct/random.hpp"
#include "aqct/statevector.hpp"

namespace aqct {

void CostConfig::validate(std::size_t n) const {
  if (k > n) throw InvalidInput("k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  auto check = [this](const std::vector<double>& w) {
    if (w.size() != k) throw InvalidInput("expected " + std::to_string(k) + " alpha weights");
    for (double a : w)
      if (!std::isfinite(a) || a < 0) throw InvalidInput("alpha weights must be finite and >= 0");
  };
  check(alphas);
  for (const auto& phase : schedule) {
    if (!(phase.fraction > 0) || phase.fraction > 1)
      throw InvalidInput("phase fraction must lie in (0, 1]");
    check(phase.alphas);
  }
  policy.validate();
}

CostConfig CostConfig::two_phase(std::size_t n, const TruncationPolicy& policy) {
  const double a = n > 0 ? static_cast<double>(n - 1) / static_cast<double>(n) : 0.0;
  CostConfig cfg;
  cfg.k = 1;
  cfg.alphas = {a};
  cfg.schedule = {{0.5, {a}}, {0.5, {0.0}}};
  cfg.policy = policy;
  return cfg;
}

CostConfig CostConfig::global(const TruncationPolicy& policy) {
  CostConfig cfg;
  cfg.k = 1;
  cfg.alphas = {0.0};
  cfg.schedule = {{1.0, {0.0}}};
  cfg.policy = policy;
  return cfg;
}

CostConfig CostConfig::with_alphas(std::vector<double> weights) const {
  CostConfig out = *this;
  out.alphas = std::move(weights);
  return out;
}

CostValue cost_from_state(const Mps& phi, std::size_t k, std::span<const double> alphas) {
  if (alphas.size() != k) throw InvalidInput("expected " + std::to_string(k) + " alpha weights");
  const auto w = hamming_weight_norms(phi, k);
  CostValue v;
  v.infidelity_term = 1.0 - w[0];
  v.total = v.infidelity_term;
  for (std::size_t m = 1; m <= k; ++m) {
    v.flip_terms.push_back(w[m]);
    v.total -= alphas[m - 1] * w[m];
  }
  return v;
}

CostValue cost_global(const Ansatz& ansatz, std::span<const double> theta, const Mps& target,
                      const TruncationPolicy& policy) {
  const Mps phi = apply_ansatz_adjoint(ansatz, theta, target, policy);
  const std::vector<std::uint8_t> zeros(ansatz.n, 0);
  const double p0 = std::norm(amplitude(phi, zeros));
  return CostValue{1.0 - p0, 1.0 - p0, {}};
}

CostValue cost_local_truncated(const Ansatz& ansatz, std::span<const double> theta,
                               const Mps& target, const CostConfig& cfg) {
  cfg.validate(ansatz.n);
  const Mps phi = apply_ansatz_adjoint(ansatz, theta, target, cfg.policy);
  return cost_from_state(phi, cfg.k, cfg.alphas);
}

double cost_full_local_bruteforce(const Ansatz& ansatz, std::span<const double> theta,
                                  const Mps& target, const TruncationPolicy& policy) {
  const std::size_t n = ansatz.n;
  if (n > kMaxBruteForceQubits)
    throw SizeLimitError("brute-force local cost limited to " +
                         std::to_string(kMaxBruteForceQubits) + " qubits");
  const DenseState phi = to_statevector(apply_ansatz_adjoint(ansatz, theta, target, policy));
  double kept = 0.0;
  for (Eigen::Index x = 0; x < phi.size(); ++x) {
    const auto ones = static_cast<std::size_t>(__builtin_popcountll(static_cast<unsigned long long>(x)));
    kept += static_cast<double>(n - ones) / static_cast<double>(n) * std::norm(phi(x));
  }
  return 1.0 - kept;
}

std::vector<double> gradient(const Ansatz& ansatz, std::span<const double> theta,
                             const Mps& target, const CostConfig& cfg) {
  cfg.validate(ansatz.n);
  std::vector<double> shifted(theta.begin(), theta.end());
  std::vector<double> g(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    shifted[j] = theta[j] + kPi / 2;
    const double plus = cost_local_truncated(ansatz, shifted, target, cfg).total;
    shifted[j] = theta[j] - kPi / 2;
    const double minus = cost_local_truncated(ansatz, shifted, target, cfg).total;
    shifted[j] = theta[j];
    g[j] = (plus - minus) / 2;
  }
  return g;
}

std::vector<double> gradient_fd(const std::function<double(std::span<const double>)>& cost,
                                std::span<const double> theta, double h) {
  if (!(h > 0)) throw InvalidInput("finite-difference step must be positive");
  std::vector<double> x(theta.begin(), theta.end());
  std::vector<double> g(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    x[j] = theta[j] + h;
    const double plus = cost(x);
    x[j] = theta[j] - h;
    const double minus = cost(x);
    x[j] = theta[j];
    g[j] = (plus - minus) / (2 * h);
  }
  return g;
}

std::vector<double> gradient_fd(const Ansatz& ansatz, std::span<const double> theta,
                                const Mps& target, const CostConfig& cfg, double h) {
  return gradient_fd(
      [&](std::span<const double> x) { return cost_local_truncated(ansatz, x, target, cfg).total; },
      theta, h);
}

namespace {

// Q|phi> with Q = Σ_m a_m Π_m, where Π_m projects on strings with m ones and
// a = (1, α_1, ..., α_k). The counter automaton raises the bond by k+1.
Mps apply_sector_weights(const Mps& phi, std::size_t k, std::span<const double> alphas) {
  const std::size_t n = phi.size();
  const std::size_t levels = k + 1;
  std::vector<double> weight(levels, 1.0);
  for (std::size_t m = 1; m <= k; ++m) weight[m] = alphas[m - 1];
  std::vector<SiteTensor> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = phi.site(i);
    const auto dl = static_cast<Eigen::Index>(a.left_dim());
    const auto dr = static_cast<Eigen::Index>(a.right_dim());
    const std::size_t lc = i == 0 ? 1 : levels;
    const bool last = i + 1 == n;
    const std::size_t rc = last ? 1 : levels;
    for (int s = 0; s < 2; ++s) {
      MatX b = MatX::Zero(dl * static_cast<Eigen::Index>(lc), dr * static_cast<Eigen::Index>(rc));
      for (std::size_t c = 0; c < lc; ++c) {
        const std::size_t next = c + static_cast<std::size_t>(s);
        if (next >= levels) continue;
        const auto row = static_cast<Eigen::Index>(c) * dl;
        if (last)
          b.block(row, 0, dl, dr) = weight[next] * a.m[s];
        else
          b.block(row, static_cast<Eigen::Index>(next) * dr, dl, dr) = a.m[s];
      }
      out[i].m[s] = std::move(b);
    }
  }
  Mps q(std::move(out));
  q.canonicalize_inplace(0);
  return q;
}

// Left environments L[i] over sites < i and right environments R[i] over
// sites >= i of <bra|ket>, each indexed (bra bond, ket bond).
struct MixedEnvironments {
  std::vector<MatX> left;
  std::vector<MatX> right;
};

MixedEnvironments mixed_environments(const Mps& bra, const Mps& ket) {
  const std::size_t n = bra.size();
  MixedEnvironments env;
  env.left.resize(n + 1);
  env.right.resize(n + 1);
  env.left[0] = MatX::Ones(1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = bra.site(i);
    const auto& b = ket.site(i);
    env.left[i + 1] = a.m[0].adjoint() * env.left[i] * b.m[0];
    env.left[i + 1].noalias() += a.m[1].adjoint() * env.left[i] * b.m[1];
  }
  env.right[n] = MatX::Ones(1, 1);
  for (std::size_t i = n; i-- > 0;) {
    const auto& a = bra.site(i);
    const auto& b = ket.site(i);
    env.right[i] = a.m[0].conjugate() * env.right[i + 1] * b.m[0].transpose();
    env.right[i].noalias() += a.m[1].conjugate() * env.right[i + 1] * b.m[1].transpose();
  }
  return env;
}

// X(s, t) = <bra| (|s><t|) |ket> on one site.
Mat2 local_density_one(const MixedEnvironments& env, const Mps& bra, const Mps& ket,
                       std::size_t i) {
  Mat2 x;
  for (int t = 0; t < 2; ++t) {
    const MatX m = env.left[i] * ket.site(i).m[t];
    for (int s = 0; s < 2; ++s) {
      const MatX p = bra.site(i).m[s].conjugate() * env.right[i + 1];
      x(s, t) = (m.array() * p.array()).sum();
    }
  }
  return x;
}

Mat4 local_density_two(const MixedEnvironments& env, const Mps& bra, const Mps& ket,
                       std::size_t i) {
  std::array<MatX, 4> m, p;
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2) {
      m[2 * s1 + s2] = env.left[i] * ket.site(i).m[s1] * ket.site(i + 1).m[s2];
      p[2 * s1 + s2] =
          (bra.site(i).m[s1] * bra.site(i + 1).m[s2]).conjugate() * env.right[i + 2];
    }
  Mat4 x;
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t) x(s, t) = (m[t].array() * p[s].array()).sum();
  return x;
}

}  // namespace

CostGradient cost_and_gradient(const Ansatz& ansatz, std::span<const double> theta,
                               const Mps& target, const CostConfig& cfg) {
  cfg.validate(ansatz.n);
  if (target.size() != ansatz.n) throw InvalidInput("target size differs from ansatz size");
  const CompiledAnsatz compiled = compile_ansatz(ansatz, theta);
  const auto& columns = compiled.schedule.columns;
  const std::size_t num_cols = columns.size();

  // chi[c] = W_{c+1}^† ... W_last^† |target>
  std::vector<Mps> chi(num_cols);
  chi[num_cols - 1] = target;
  for (std::size_t c = num_cols - 1; c > 0; --c) {
    chi[c - 1] = chi[c];
    GateColumn adj{columns[c].tag, {}};
    for (const auto& g : columns[c].gates) adj.gates.push_back({g.site, g.u.adjoint()});
    apply_column_inplace(chi[c - 1], adj, cfg.policy);
  }
  Mps phi = chi[0];
  {
    GateColumn adj{columns[0].tag, {}};
    for (const auto& g : columns[0].gates) adj.gates.push_back({g.site, g.u.adjoint()});
    apply_column_inplace(phi, adj, cfg.policy);
  }
  if (!phi.center()) phi.canonicalize_inplace(0);
  if (cfg.policy.renormalize && phi.norm() > 0) phi.scale(1.0 / phi.norm());

  CostGradient out;
  out.value = cost_from_state(phi, cfg.k, cfg.alphas);
  out.discarded_weight = phi.discarded_weight() - target.discarded_weight();
  out.gradient.assign(theta.size(), 0.0);

  TruncationPolicy forward = cfg.policy;
  forward.renormalize = false;
  if (forward.chi_max != kUnboundedBond) {
    const std::size_t levels = cfg.k + 1;
    forward.chi_max = forward.chi_max > kUnboundedBond / levels ? kUnboundedBond
                                                                : forward.chi_max * levels;
  }

  // xi_c = W_c ... W_0 Q |phi>; dC/dθ = -2 Re <chi_c| (dG G^†) |xi_c>.
  Mps xi = apply_sector_weights(phi, cfg.k, cfg.alphas);
  for (std::size_t c = 0; c < num_cols; ++c) {
    apply_column_inplace(xi, columns[c], forward);
    const auto& derivs = compiled.derivatives[c];
    bool any = false;
    for (const auto& d : derivs) any = any || !d.empty();
    if (!any) continue;
    const auto env = mixed_environments(chi[c], xi);
    for (std::size_t g = 0; g < columns[c].gates.size(); ++g) {
      if (derivs[g].empty()) continue;
      const auto& gate = columns[c].gates[g];
      if (gate.width() == 1) {
        const Mat2 x = local_density_one(env, chi[c], xi, gate.site);
        for (const auto& d : derivs[g]) {
          const Mat2 op = d.du * gate.u.adjoint();
          out.gradient[d.param] += -2.0 * (op.cwiseProduct(x)).sum().real();
        }
      } else {
        const Mat4 x = local_density_two(env, chi[c], xi, gate.site);
        for (const auto& d : derivs[g]) {
          const Mat4 op = d.du * gate.u.adjoint();
          out.gradient[d.param] += -2.0 * (op.cwiseProduct(x)).sum().real();
        }
      }
    }
  }
  return out;
}

double variance_probe(std::size_t n, std::size_t k, std::size_t samples, std::uint64_t seed,
                      std::size_t component) {
  if (n < 1 || k > n) throw InvalidInput("variance probe needs 1 <= n and k <= n");
  if (component >= n) throw InvalidInput("component out of range");
  if (samples < 2) throw InvalidInput("variance probe needs at least two samples");
  // V^†|0> is the product state ⊗(cos(θ/2)|0> + i sin(θ/2)|1>), so the sector
  // weights are elementary symmetric polynomials of the flip probabilities.
  std::vector<double> alpha(k + 1);
  alpha[0] = 1.0;
  for (std::size_t m = 1; m <= k; ++m)
    alpha[m] = static_cast<double>(n - m) / static_cast<double>(n);
  Rng rng(seed);
  double mean = 0.0, m2 = 0.0;
  std::vector<double> theta(n), e(k + 1);
  for (std::size_t sample = 0; sample < samples; ++sample) {
    for (auto& t : theta) t = rng.uniform(0.0, 2 * kPi);
    std::fill(e.begin(), e.end(), 0.0);
    e[0] = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == component) continue;
      const double q = std::pow(std::sin(theta[j] / 2), 2);
      for (std::size_t m = k; m > 0; --m) e[m] = (1 - q) * e[m] + q * e[m - 1];
      e[0] *= 1 - q;
    }
    // d e_m/dθ = (sin θ / 2)(e'_{m-1} - e'_m) for the differentiated qubit
    const double ds = std::sin(theta[component]) / 2;
    double g = 0.0;
    for (std::size_t m = 0; m <= k; ++m)
      g -= alpha[m] * ds * ((m > 0 ? e[m - 1] : 0.0) - e[m]);
    const double delta = g - mean;
    mean += delta / static_cast<double>(sample + 1);
    m2 += delta * (g - mean);
  }
  return m2 / static_cast<double>(samples - 1);
}

}  // namespace aqct
