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
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "aqct/circuit.hpp"
#include "aqct/hamiltonian.hpp"
#include "aqct/linalg.hpp"
#include "aqct/mps.hpp"
#include "aqct/schedule.hpp"

namespace aqct {

/// CNOT followed by Ry(θ1)·Rz(θ2) on the control and Ry(θ3)·Rz(θ4) on the
/// target (operator products, so each Rz acts first). The four angles live at
/// theta[param_offset .. param_offset + 3].
struct CnotBlock {
  std::size_t control = 0;
  std::size_t target = 1;
  std::size_t param_offset = 0;

  /// Control on the right site of its pair.
  bool reversed() const { return control > target; }
};

/// One two-site gate position of the Trotter layout, filled by
/// `blocks_per_slot` consecutive CNOT blocks.
struct AnsatzSlot {
  std::size_t left_site = 0;
  std::vector<std::size_t> blocks;  // indices into Ansatz::blocks, in application order
};

struct AnsatzColumn {
  ColumnTag tag = ColumnTag::kField;
  std::vector<AnsatzSlot> slots;
  /// Field columns only: parameter index per qubit when fields are trainable.
  std::vector<std::size_t> field_params;
};

struct AnsatzOptions {
  std::size_t blocks_per_slot = 3;
  /// Promote the field rotations to trainable Rz angles.
  bool trainable_fields = false;
};

/// Brickwork circuit mirroring the fused l-step second-order Trotter layout:
/// three trainable rotations Rz·Ry·Rz per qubit, then l+1 even and l odd
/// columns of CNOT-block slots interleaved with 2l field columns.
///
/// Parameter layout: θ[3q .. 3q+2] are the initial rotations of qubit q
/// (operator Rz(θ[3q]) Ry(θ[3q+1]) Rz(θ[3q+2])), followed by the blocks in
/// circuit order, followed by trainable field angles if enabled.
struct Ansatz {
  std::size_t n = 0;
  std::size_t layers = 0;
  std::size_t blocks_per_slot = 3;
  double dt = 0.0;
  XYZHamiltonian hamiltonian;
  /// φ_i = h_i dt; each field column applies exp(-(1/2) i φ_i Sz) = Rz(φ_i / 2).
  std::vector<double> field_angles;
  bool trainable_fields = false;
  std::vector<CnotBlock> blocks;
  std::vector<AnsatzColumn> columns;
  std::size_t num_parameters = 0;
};

using ParamVector = std::vector<double>;

/// Throws InvalidInput for n < 2 or l < 1.
Ansatz build_brickwork_ansatz(std::size_t n, std::size_t layers, const XYZHamiltonian& ham,
                              double dt, const AnsatzOptions& options = {});

/// Block unitary in the two-site basis; `reversed` puts the control on the right site.
Mat4 block_unitary(std::span<const double> theta, bool reversed);

/// Product of b blocks on one pair with the alternating direction rule (the
/// first, third, ... blocks have the control on the right site).
Mat4 slot_unitary(std::span<const double> angles, std::size_t blocks_per_slot);

/// Angles of a 3-block slot reproducing two_site_unitary(α, β, Δ, dt) up to
/// global phase. Uses the closed form and refines numerically if its residual
/// exceeds 1e-12.
std::array<double, 12> slot_angles_for(double alpha, double beta, double delta, double dt);

/// Parameters making the ansatz equal to the l-step Trotter circuit started
/// from |initial_bits⟩ (the product state is prepared by the initial
/// rotations: Ry(π) on every 1). Throws InvalidInput on structure mismatch.
ParamVector trotter_initialize(const Ansatz& ansatz, const XYZHamiltonian& ham, double dt,
                               std::string_view initial_bits);

/// Gate columns of V(θ) with each slot fused into one 4×4 gate. The first
/// column holds the initial rotations.
GateSchedule ansatz_schedule(const Ansatz& ansatz, std::span<const double> theta);

struct GateDerivative {
  std::size_t param = 0;
  MatX du;
};

/// Schedule plus ∂u/∂θ_j for every gate, indexed [column][gate].
struct CompiledAnsatz {
  GateSchedule schedule;
  std::vector<std::vector<std::vector<GateDerivative>>> derivatives;
};

CompiledAnsatz compile_ansatz(const Ansatz& ansatz, std::span<const double> theta);

Mps apply_ansatz(const Ansatz& ansatz, std::span<const double> theta, Mps psi_in,
                 const TruncationPolicy& policy);

/// V†(θ)|target⟩.
Mps apply_ansatz_adjoint(const Ansatz& ansatz, std::span<const double> theta, Mps target,
                         const TruncationPolicy& policy);

/// Primitive-gate expansion of V(θ).
Circuit ansatz_circuit(const Ansatz& ansatz, std::span<const double> theta);

/// Primitive-gate expansion of the fused Trotter circuit: every U(dt) becomes
/// the three-CNOT slot with closed-form angles.
Circuit trotter_circuit(const XYZHamiltonian& ham, double dt, std::size_t steps);

std::size_t cnot_depth(const Ansatz& ansatz);
std::size_t trotter_cnot_depth(const XYZHamiltonian& ham, std::size_t steps);

/// (column tag, left site) for every two-site slot, in circuit order.
std::vector<std::pair<ColumnTag, std::size_t>> two_site_slots(const Ansatz& ansatz);
std::vector<std::pair<ColumnTag, std::size_t>> two_site_slots(const GateSchedule& schedule);

}  // namespace aqct
