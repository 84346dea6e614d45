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
#include <functional>
#include <span>
#include <vector>

#include "aqct/ansatz.hpp"
#include "aqct/mps.hpp"

namespace aqct {

/// Share of the iteration budget spent with fixed weights α_1..α_k.
struct AlphaPhase {
  double fraction = 1.0;
  std::vector<double> alphas;
};

struct CostConfig {
  /// Highest number of bit flips kept in the truncated local cost.
  std::size_t k = 1;
  /// Weights α_1..α_k currently in force (size k).
  std::vector<double> alphas{0.0};
  /// Iteration plan; the last phase should use all-zero weights.
  std::vector<AlphaPhase> schedule;
  TruncationPolicy policy;

  /// Throws InvalidInput unless k <= n, alphas has size k, and weights are finite and >= 0.
  void validate(std::size_t n) const;

  /// k = 1; first half with α_1 = (n-1)/n, second half with α_1 = 0.
  static CostConfig two_phase(std::size_t n, const TruncationPolicy& policy = {});
  /// k = 1 with α_1 = 0 throughout.
  static CostConfig global(const TruncationPolicy& policy = {});

  /// Copy with `alphas` replaced.
  CostConfig with_alphas(std::vector<double> weights) const;
};

/// total = infidelity_term - Σ_m α_m flip_terms[m-1].
struct CostValue {
  double total = 1.0;
  double infidelity_term = 1.0;
  std::vector<double> flip_terms;
};

/// Cost terms read from |φ⟩ = V†|ψ_t⟩.
CostValue cost_from_state(const Mps& phi, std::size_t k, std::span<const double> alphas);

/// 1 - |⟨0|V†(θ)|ψ_t⟩|².
CostValue cost_global(const Ansatz& ansatz, std::span<const double> theta, const Mps& target,
                      const TruncationPolicy& policy);

/// 1 - |⟨0|φ⟩|² - Σ_{m=1..k} α_m Σ_{|s|=m} |⟨s|φ⟩|².
CostValue cost_local_truncated(const Ansatz& ansatz, std::span<const double> theta,
                               const Mps& target, const CostConfig& cfg);

inline constexpr std::size_t kMaxBruteForceQubits = 14;

/// Untruncated local cost by enumerating all 2^n strings with weights
/// (n - |s|)/n. Throws SizeLimitError for n > 14.
double cost_full_local_bruteforce(const Ansatz& ansatz, std::span<const double> theta,
                                  const Mps& target,
                                  const TruncationPolicy& policy = {});

/// Parameter-shift gradient: (C(θ_j + π/2) - C(θ_j - π/2)) / 2 for each
/// trainable angle. 2P cost evaluations.
std::vector<double> gradient(const Ansatz& ansatz, std::span<const double> theta,
                             const Mps& target, const CostConfig& cfg);

/// Central differences with step h.
std::vector<double> gradient_fd(const std::function<double(std::span<const double>)>& cost,
                                std::span<const double> theta, double h);
std::vector<double> gradient_fd(const Ansatz& ansatz, std::span<const double> theta,
                                const Mps& target, const CostConfig& cfg, double h);

struct CostGradient {
  CostValue value;
  std::vector<double> gradient;
  /// Truncation weight discarded while applying V† to the target.
  double discarded_weight = 0.0;
};

/// Cost and gradient from one backward pass of V† over the target and one
/// forward pass of V over Q|φ⟩, where Q = Σ_m α_m Π_m (α_0 = 1) projects on
/// Hamming-weight sectors. Each gate derivative is contracted against its
/// column environment, so the cost is a few state propagations instead of 2P.
/// Exact when no truncation happens.
CostGradient cost_and_gradient(const Ansatz& ansatz, std::span<const double> theta,
                               const Mps& target, const CostConfig& cfg);

/// Monte-Carlo variance of ∂C_L^(k)/∂θ_component for V(θ) = ⊗_j exp(-i θ_j X/2),
/// target |0…0⟩ and weights α_m = (n-m)/n, with θ uniform in [0, 2π)^n.
double variance_probe(std::size_t n, std::size_t k, std::size_t samples, std::uint64_t seed,
                      std::size_t component = 0);

}  // namespace aqct
