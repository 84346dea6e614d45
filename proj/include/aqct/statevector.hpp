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
#include <span>
#include <string_view>

#include "aqct/ansatz.hpp"
#include "aqct/hamiltonian.hpp"
#include "aqct/linalg.hpp"
#include "aqct/mps.hpp"
#include "aqct/schedule.hpp"

// Dense reference simulator. Amplitude index of the basis string s_0 s_1 ...
// s_{n-1} is Σ_i s_i 2^{n-1-i}, matching the MPS site order.

namespace aqct {

using DenseState = Eigen::VectorXcd;

inline constexpr std::size_t kMaxDenseQubits = 14;
inline constexpr std::size_t kMaxExactEvolutionQubits = 12;

DenseState sv_product_state(std::string_view bits);

void sv_apply_one_site(DenseState& state, const Mat2& u, std::size_t site);
void sv_apply_two_site(DenseState& state, const Mat4& u, std::size_t left);

DenseState sv_apply_schedule(DenseState state, const GateSchedule& schedule);
DenseState sv_apply_ansatz(DenseState state, const Ansatz& ansatz, std::span<const double> theta);

/// Dense unitary of a whole schedule (n <= 10).
MatX sv_schedule_matrix(const GateSchedule& schedule);

/// Full 2^n × 2^n Hamiltonian matrix.
MatX sv_hamiltonian(const XYZHamiltonian& ham);

/// e^{-iHt}|psi0⟩ by dense Hermitian eigendecomposition.
DenseState sv_exact_evolution(const XYZHamiltonian& ham, const DenseState& psi0, double t);

/// |⟨a|b⟩|²; throws InvalidInput on dimension mismatch.
double sv_fidelity(const DenseState& a, const DenseState& b);

DenseState to_statevector(const Mps& psi);
/// Exact MPS of a dense state by successive SVDs.
Mps from_statevector(const DenseState& state, const TruncationPolicy& policy = {});

std::size_t qubit_count(const DenseState& state);

}  // namespace aqct
