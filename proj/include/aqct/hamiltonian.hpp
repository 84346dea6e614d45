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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aqct/linalg.hpp"
#include "aqct/mps.hpp"
#include "aqct/schedule.hpp"

namespace aqct {

/// Open-chain XYZ model
///   H = -Σ_{i=0}^{L-2} (α_i Sx_i Sx_{i+1} + β_i Sy_i Sy_{i+1} + Δ_i Sz_i Sz_{i+1}) + Σ_i h_i Sz_i
/// with S = σ/2.
struct XYZHamiltonian {
  std::size_t n = 0;
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> delta;
  std::vector<double> h;
  /// Seed that produced random couplings; echoed in reports.
  std::optional<std::uint64_t> seed;

  /// Throws InvalidInput unless the lists have lengths n-1, n-1, n-1, n and are finite.
  void validate() const;

  static XYZHamiltonian uniform(std::size_t n, double alpha, double beta, double delta,
                                double field = 0.0);
};

bool operator==(const XYZHamiltonian& a, const XYZHamiltonian& b);

/// α_i, β_i, Δ_i i.i.d. uniform in [lo, hi]; fields zero.
XYZHamiltonian random_xyz(std::size_t n, double lo, double hi, std::uint64_t seed);

/// Named families: "xxx" (0.75, 0.75, 0.75), "xxz" (0.75, 0.75, 1.5) and
/// "random-xyz" (uniform in [0.375, 1.125] from seed).
XYZHamiltonian hamiltonian_preset(const std::string& name, std::size_t n, std::uint64_t seed = 0);

void to_json(nlohmann::json& j, const XYZHamiltonian& ham);
void from_json(const nlohmann::json& j, XYZHamiltonian& ham);

/// exp(i dt (α SxSx + β SySy + Δ SzSz)).
Mat4 two_site_unitary(double alpha, double beta, double delta, double dt);

/// exp(-(1/2) i h Sz dt) when half, exp(-i h Sz dt) otherwise.
Mat2 field_rotation(double h, double dt, bool half);

/// Dense 4×4 bond term α SxSx + β SySy + Δ SzSz.
Mat4 bond_operator(double alpha, double beta, double delta);

/// Fused second-order Trotter circuit for `steps` steps:
/// even-half, field, odd-full, field, even-full, ..., field, even-half.
/// Field columns hold half rotations exp(-(1/2) i h Sz dt).
GateSchedule build_trotter_schedule(const XYZHamiltonian& ham, double dt, std::size_t steps);

/// Applies build_trotter_schedule gate by gate; returns a normalized state.
Mps tebd_evolve(Mps psi0, const XYZHamiltonian& ham, double dt, std::size_t steps,
                const TruncationPolicy& policy);

/// Applies every column of a schedule to an MPS.
Mps apply_schedule(Mps psi, const GateSchedule& schedule, const TruncationPolicy& policy);
/// In-place variant used by the hot loops.
void apply_schedule_inplace(Mps& psi, const GateSchedule& schedule, const TruncationPolicy& policy);
void apply_column_inplace(Mps& psi, const GateColumn& column, const TruncationPolicy& policy);

/// ⟨H⟩ from one- and two-site expectations.
double energy(const Mps& psi, const XYZHamiltonian& ham);
/// ⟨Σ_i Sz_i⟩.
double total_sz(const Mps& psi);

}  // namespace aqct
