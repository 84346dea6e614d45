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

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "aqct/linalg.hpp"

namespace aqct {

inline constexpr std::size_t kUnboundedBond = std::numeric_limits<std::size_t>::max();

/// How singular values are discarded after a two-site gate.
///
/// A singular value s_k survives when k < chi_max and s_k > cutoff * s_0,
/// where s_0 is the largest one. The discarded weight is the squared norm of
/// the dropped values relative to the total.
struct TruncationPolicy {
  std::size_t chi_max = kUnboundedBond;
  double cutoff = 1e-12;
  bool renormalize = true;

  /// Throws InvalidInput unless chi_max >= 1 and 0 <= cutoff < 1.
  void validate() const;

  static TruncationPolicy bounded(std::size_t chi, double cutoff = 1e-12) {
    return TruncationPolicy{chi, cutoff, true};
  }
};

/// Site tensor A^(i) stored as one χ_left × χ_right matrix per physical index.
struct SiteTensor {
  std::array<MatX, 2> m;

  std::size_t left_dim() const { return static_cast<std::size_t>(m[0].rows()); }
  std::size_t right_dim() const { return static_cast<std::size_t>(m[0].cols()); }
};

enum class Sweep { kRight, kLeft };

/// Open-boundary matrix product state of n qubits.
///
/// Site 0 is the leftmost tensor and the leftmost character of basis strings.
/// The state keeps an optional orthogonality center: when set to c, every
/// tensor left of c is left-orthonormal and every tensor right of c is
/// right-orthonormal, so the norm of the state is the Frobenius norm of
/// tensor c.
class Mps {
 public:
  Mps() = default;

  /// Takes ownership of the tensors; checks boundary and adjacent bond dims.
  explicit Mps(std::vector<SiteTensor> tensors, std::optional<std::size_t> center = std::nullopt);

  static Mps product_state(std::string_view bits);

  std::size_t size() const { return tensors_.size(); }
  const SiteTensor& site(std::size_t i) const { return tensors_[i]; }
  const std::vector<SiteTensor>& tensors() const { return tensors_; }
  std::optional<std::size_t> center() const { return center_; }

  /// Dimension of the bond between sites i and i+1.
  std::size_t bond_dim(std::size_t i) const { return tensors_[i].right_dim(); }
  std::size_t max_bond() const;

  /// Sum of discarded weights over every truncation this state went through.
  double discarded_weight() const { return discarded_weight_; }
  /// Largest bond dimension reached at any time during its history.
  std::size_t peak_bond() const { return peak_bond_; }

  double norm() const;
  void scale(cplx factor);

  void canonicalize_inplace(std::size_t center);
  /// Moves the center with QR steps; canonicalizes first if there is none.
  void move_center(std::size_t center);

  void apply_one_site(const Mat2& u, std::size_t site);
  /// Center ends at left+1 for Sweep::kRight and at left for Sweep::kLeft.
  /// Returns the discarded weight of this application.
  double apply_two_site(const Mat4& u, std::size_t left, const TruncationPolicy& policy,
                        Sweep sweep = Sweep::kRight);

 private:
  void shift_center_right(std::size_t i);
  void shift_center_left(std::size_t i);

  std::vector<SiteTensor> tensors_;
  std::optional<std::size_t> center_;
  double discarded_weight_ = 0.0;
  std::size_t peak_bond_ = 1;
};

/// |bits⟩ with all bond dimensions 1. Throws InvalidInput on empty or non-binary input.
Mps from_product_state(std::string_view bits);

/// ⟨a|b⟩ by left-to-right transfer-matrix contraction.
cplx inner_product(const Mps& a, const Mps& b);

/// |⟨a|b⟩|².
double fidelity(const Mps& a, const Mps& b);

/// Coefficient of the basis string `bits` (the matrix product A_{j1}···A_{jn}).
cplx amplitude(const Mps& psi, std::string_view bits);
cplx amplitude(const Mps& psi, std::span<const std::uint8_t> bits);

/// Rejects u unless unitary within 1e-10. Bond dimensions are unchanged.
Mps apply_single_site_gate(Mps psi, const Mat2& u, std::size_t site);

/// Contracts u into (left_site, left_site+1), splits by SVD and truncates per
/// policy. The orthogonality center ends at left_site + 1.
Mps apply_two_site_gate(Mps psi, const Mat4& u, std::size_t left_site,
                        const TruncationPolicy& policy);

Mps canonicalize(Mps psi, std::size_t center);

std::size_t max_bond(const Mps& psi);

/// w[m] = Σ_{|s|=m} |⟨s|psi⟩|² for m = 0..max_weight, by a transfer-matrix
/// contraction that tracks the number of ones seen so far.
std::vector<double> hamming_weight_norms(const Mps& psi, std::size_t max_weight);

/// ⟨psi|O_site|psi⟩ for a 2×2 operator.
cplx expectation_one_site(const Mps& psi, const Mat2& op, std::size_t site);
/// ⟨psi|O_{left,left+1}|psi⟩ for a 4×4 operator.
cplx expectation_two_site(const Mps& psi, const Mat4& op, std::size_t left);

/// Normalized random MPS with the given internal bond dimension (capped by
/// the exact bound 2^min(i, n-i)); deterministic in seed.
Mps random_mps(std::size_t n, std::size_t chi, std::uint64_t seed);

}  // namespace aqct
