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

#include "aqct/ansatz.hpp"

#include <cmath>
#include <string>

#include "aqct/error.hpp"

namespace aqct {

namespace {

bool is_two_site(ColumnTag tag) {
  return tag == ColumnTag::kEvenHalf || tag == ColumnTag::kOddFull || tag == ColumnTag::kEvenFull;
}

Mat2 initial_rotation(double a, double b, double c) { return rz(a) * ry(b) * rz(c); }

Mat2 field_gate(const Ansatz& ansatz, const AnsatzColumn& column, std::span<const double> theta,
                std::size_t q) {
  return ansatz.trainable_fields ? rz(theta[column.field_params[q]])
                                 : rz(ansatz.field_angles[q] / 2);
}

std::vector<double> slot_params(const Ansatz& ansatz, const AnsatzSlot& slot,
                                std::span<const double> theta) {
  std::vector<double> local;
  local.reserve(4 * slot.blocks.size());
  for (auto b : slot.blocks) {
    const auto offset = ansatz.blocks[b].param_offset;
    local.insert(local.end(), theta.begin() + offset, theta.begin() + offset + 4);
  }
  return local;
}

std::vector<std::size_t> slot_param_indices(const Ansatz& ansatz, const AnsatzSlot& slot) {
  std::vector<std::size_t> idx;
  for (auto b : slot.blocks)
    for (std::size_t k = 0; k < 4; ++k) idx.push_back(ansatz.blocks[b].param_offset + k);
  return idx;
}

// Residual of e^{-iγ} S(θ) - U with the optimal phase γ, as 32 reals.
Eigen::VectorXd slot_residual(std::span<const double> angles, const Mat4& target) {
  const Mat4 s = slot_unitary(angles, 3);
  const cplx overlap = (target.adjoint() * s).trace();
  const cplx phase = std::abs(overlap) > 0 ? std::conj(overlap) / std::abs(overlap) : cplx{1, 0};
  const Mat4 diff = phase * s - target;
  Eigen::VectorXd r(32);
  for (int i = 0; i < 16; ++i) {
    r(i) = diff(i / 4, i % 4).real();
    r(16 + i) = diff(i / 4, i % 4).imag();
  }
  return r;
}

// Levenberg-Marquardt on the 12 slot angles.
void refine_slot_angles(std::array<double, 12>& angles, const Mat4& target) {
  constexpr double kStep = 1e-7;
  double lambda = 1e-3;
  Eigen::VectorXd r = slot_residual(angles, target);
  for (int iter = 0; iter < 500 && r.norm() > 1e-14; ++iter) {
    Eigen::MatrixXd jac(32, 12);
    for (int k = 0; k < 12; ++k) {
      auto plus = angles, minus = angles;
      plus[k] += kStep;
      minus[k] -= kStep;
      jac.col(k) = (slot_residual(plus, target) - slot_residual(minus, target)) / (2 * kStep);
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 20 && !improved; ++tries) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
      const Eigen::VectorXd step = damped.ldlt().solve(-jtr);
      auto trial = angles;
      for (int k = 0; k < 12; ++k) trial[k] += step(k);
      const Eigen::VectorXd rt = slot_residual(trial, target);
      if (rt.norm() < r.norm()) {
        angles = trial;
        r = rt;
        lambda = std::max(lambda / 3, 1e-12);
        improved = true;
      } else {
        lambda *= 4;
      }
    }
    if (!improved) break;
  }
}

}  // namespace

Ansatz build_brickwork_ansatz(std::size_t n, std::size_t layers, const XYZHamiltonian& ham,
                              double dt, const AnsatzOptions& options) {
  if (n < 2) throw InvalidInput("ansatz needs at least two qubits");
  if (layers < 1) throw InvalidInput("ansatz needs at least one layer");
  if (options.blocks_per_slot < 1) throw InvalidInput("blocks_per_slot must be positive");
  ham.validate();
  if (ham.n != n) throw InvalidInput("Hamiltonian size differs from ansatz size");

  Ansatz a;
  a.n = n;
  a.layers = layers;
  a.blocks_per_slot = options.blocks_per_slot;
  a.dt = dt;
  a.hamiltonian = ham;
  a.trainable_fields = options.trainable_fields;
  for (std::size_t q = 0; q < n; ++q) a.field_angles.push_back(ham.h[q] * dt);

  std::vector<ColumnTag> tags{ColumnTag::kEvenHalf};
  for (std::size_t step = 0; step < layers; ++step) {
    tags.push_back(ColumnTag::kField);
    tags.push_back(ColumnTag::kOddFull);
    tags.push_back(ColumnTag::kField);
    tags.push_back(step + 1 < layers ? ColumnTag::kEvenFull : ColumnTag::kEvenHalf);
  }

  std::size_t offset = 3 * n;
  for (auto tag : tags) {
    AnsatzColumn column{tag, {}, {}};
    if (is_two_site(tag)) {
      const std::size_t first = tag == ColumnTag::kOddFull ? 1 : 0;
      for (std::size_t i = first; i + 1 < n; i += 2) {
        AnsatzSlot slot{i, {}};
        for (std::size_t j = 0; j < options.blocks_per_slot; ++j) {
          const bool reversed = j % 2 == 0;
          slot.blocks.push_back(a.blocks.size());
          a.blocks.push_back({reversed ? i + 1 : i, reversed ? i : i + 1, offset});
          offset += 4;
        }
        column.slots.push_back(std::move(slot));
      }
    }
    a.columns.push_back(std::move(column));
  }
  if (a.trainable_fields) {
    for (auto& column : a.columns) {
      if (column.tag != ColumnTag::kField) continue;
      for (std::size_t q = 0; q < n; ++q) column.field_params.push_back(offset++);
    }
  }
  a.num_parameters = offset;
  return a;
}

Mat4 block_unitary(std::span<const double> theta, bool reversed) {
  if (theta.size() < 4) throw InvalidInput("a CNOT block takes four angles");
  const Mat2 control = ry(theta[0]) * rz(theta[1]);
  const Mat2 target = ry(theta[2]) * rz(theta[3]);
  if (!reversed) return kron(control, target) * cnot_left_control();
  return kron(target, control) * cnot_right_control();
}

Mat4 slot_unitary(std::span<const double> angles, std::size_t blocks_per_slot) {
  if (angles.size() < 4 * blocks_per_slot) throw InvalidInput("not enough slot angles");
  Mat4 u = Mat4::Identity();
  for (std::size_t j = 0; j < blocks_per_slot; ++j)
    u = block_unitary(angles.subspan(4 * j, 4), j % 2 == 0) * u;
  return u;
}

std::array<double, 12> slot_angles_for(double alpha, double beta, double delta, double dt) {
  // Three-CNOT circuit for exp(i(a XX + b YY + c ZZ)) with the leading Rz on
  // the first control commuted through that CNOT.
  const double a = alpha * dt / 4, b = beta * dt / 4, c = delta * dt / 4;
  const double half_pi = kPi / 2;
  std::array<double, 12> angles{2 * a - half_pi, -half_pi, 0.0, half_pi - 2 * c,
                                0.0,             0.0,      half_pi - 2 * b, 0.0,
                                0.0,             0.0,      0.0, half_pi};
  const Mat4 target = two_site_unitary(alpha, beta, delta, dt);
  if (distance_up_to_phase(slot_unitary(angles, 3), target) > 1e-12)
    refine_slot_angles(angles, target);
  return angles;
}

ParamVector trotter_initialize(const Ansatz& ansatz, const XYZHamiltonian& ham, double dt,
                               std::string_view initial_bits) {
  if (ansatz.blocks_per_slot != 3)
    throw InvalidInput("Trotter initialization needs three blocks per slot");
  if (!(ham == ansatz.hamiltonian) || std::abs(dt - ansatz.dt) > 1e-15 * std::max(1.0, std::abs(dt)))
    throw InvalidInput("ansatz was not built for this Hamiltonian and time step");
  if (initial_bits.size() != ansatz.n) throw InvalidInput("initial state length differs from n");
  for (char c : initial_bits)
    if (c != '0' && c != '1') throw InvalidInput("initial state must be a bit string");

  ParamVector theta(ansatz.num_parameters, 0.0);
  for (std::size_t q = 0; q < ansatz.n; ++q)
    if (initial_bits[q] == '1') theta[3 * q + 1] = kPi;

  for (const auto& column : ansatz.columns) {
    if (column.tag == ColumnTag::kField) {
      for (std::size_t q = 0; q < column.field_params.size(); ++q)
        theta[column.field_params[q]] = ansatz.field_angles[q] / 2;
      continue;
    }
    const double step = column.tag == ColumnTag::kEvenHalf ? dt / 2 : dt;
    for (const auto& slot : column.slots) {
      const std::size_t i = slot.left_site;
      const auto angles = slot_angles_for(ham.alpha[i], ham.beta[i], ham.delta[i], step);
      const auto idx = slot_param_indices(ansatz, slot);
      for (std::size_t k = 0; k < idx.size(); ++k) theta[idx[k]] = angles[k];
    }
  }
  return theta;
}

GateSchedule ansatz_schedule(const Ansatz& ansatz, std::span<const double> theta) {
  if (theta.size() != ansatz.num_parameters)
    throw InvalidInput("parameter vector has length " + std::to_string(theta.size()) +
                       ", ansatz expects " + std::to_string(ansatz.num_parameters));
  GateSchedule schedule;
  schedule.n = ansatz.n;
  GateColumn initial{ColumnTag::kInitial, {}};
  for (std::size_t q = 0; q < ansatz.n; ++q)
    initial.gates.push_back({q, initial_rotation(theta[3 * q], theta[3 * q + 1], theta[3 * q + 2])});
  schedule.columns.push_back(std::move(initial));

  for (const auto& column : ansatz.columns) {
    GateColumn out{column.tag, {}};
    if (column.tag == ColumnTag::kField) {
      for (std::size_t q = 0; q < ansatz.n; ++q)
        out.gates.push_back({q, field_gate(ansatz, column, theta, q)});
    } else {
      for (const auto& slot : column.slots)
        out.gates.push_back(
            {slot.left_site, slot_unitary(slot_params(ansatz, slot, theta), slot.blocks.size())});
    }
    schedule.columns.push_back(std::move(out));
  }
  return schedule;
}

CompiledAnsatz compile_ansatz(const Ansatz& ansatz, std::span<const double> theta) {
  CompiledAnsatz compiled;
  compiled.schedule = ansatz_schedule(ansatz, theta);
  auto& derivs = compiled.derivatives;
  derivs.resize(compiled.schedule.columns.size());

  // Every angle parameterizes one rotation exp(-iθP/2), whose derivative is
  // half the same rotation shifted by π.
  auto& init = derivs[0];
  for (std::size_t q = 0; q < ansatz.n; ++q) {
    std::array<double, 3> local{theta[3 * q], theta[3 * q + 1], theta[3 * q + 2]};
    std::vector<GateDerivative> gate;
    for (std::size_t k = 0; k < 3; ++k) {
      auto shifted = local;
      shifted[k] += kPi;
      gate.push_back({3 * q + k, 0.5 * initial_rotation(shifted[0], shifted[1], shifted[2])});
    }
    init.push_back(std::move(gate));
  }

  for (std::size_t c = 0; c < ansatz.columns.size(); ++c) {
    const auto& column = ansatz.columns[c];
    auto& out = derivs[c + 1];
    if (column.tag == ColumnTag::kField) {
      for (std::size_t q = 0; q < ansatz.n; ++q) {
        std::vector<GateDerivative> gate;
        if (ansatz.trainable_fields) {
          const auto p = column.field_params[q];
          gate.push_back({p, MatX(0.5 * rz(theta[p] + kPi))});
        }
        out.push_back(std::move(gate));
      }
      continue;
    }
    for (const auto& slot : column.slots) {
      const auto local = slot_params(ansatz, slot, theta);
      const auto idx = slot_param_indices(ansatz, slot);
      std::vector<GateDerivative> gate;
      for (std::size_t k = 0; k < local.size(); ++k) {
        auto shifted = local;
        shifted[k] += kPi;
        gate.push_back({idx[k], MatX(0.5 * slot_unitary(shifted, slot.blocks.size()))});
      }
      out.push_back(std::move(gate));
    }
  }
  return compiled;
}

Mps apply_ansatz(const Ansatz& ansatz, std::span<const double> theta, Mps psi_in,
                 const TruncationPolicy& policy) {
  if (psi_in.size() != ansatz.n) throw InvalidInput("state size differs from ansatz size");
  policy.validate();
  apply_schedule_inplace(psi_in, ansatz_schedule(ansatz, theta), policy);
  if (!psi_in.center()) psi_in.canonicalize_inplace(0);
  if (policy.renormalize && psi_in.norm() > 0) psi_in.scale(1.0 / psi_in.norm());
  return psi_in;
}

Mps apply_ansatz_adjoint(const Ansatz& ansatz, std::span<const double> theta, Mps target,
                         const TruncationPolicy& policy) {
  if (target.size() != ansatz.n) throw InvalidInput("state size differs from ansatz size");
  policy.validate();
  apply_schedule_inplace(target, adjoint(ansatz_schedule(ansatz, theta)), policy);
  if (!target.center()) target.canonicalize_inplace(0);
  if (policy.renormalize && target.norm() > 0) target.scale(1.0 / target.norm());
  return target;
}

Circuit ansatz_circuit(const Ansatz& ansatz, std::span<const double> theta) {
  if (theta.size() != ansatz.num_parameters) throw InvalidInput("parameter vector length mismatch");
  Circuit circuit;
  circuit.n = ansatz.n;
  for (std::size_t q = 0; q < ansatz.n; ++q) {
    circuit.rz(q, theta[3 * q + 2]);
    circuit.ry(q, theta[3 * q + 1]);
    circuit.rz(q, theta[3 * q]);
  }
  for (const auto& column : ansatz.columns) {
    if (column.tag == ColumnTag::kField) {
      for (std::size_t q = 0; q < ansatz.n; ++q)
        circuit.rz(q, ansatz.trainable_fields ? theta[column.field_params[q]]
                                              : ansatz.field_angles[q] / 2);
      continue;
    }
    for (const auto& slot : column.slots) {
      for (auto b : slot.blocks) {
        const auto& block = ansatz.blocks[b];
        const double* t = theta.data() + block.param_offset;
        circuit.cx(block.control, block.target);
        circuit.rz(block.control, t[1]);
        circuit.ry(block.control, t[0]);
        circuit.rz(block.target, t[3]);
        circuit.ry(block.target, t[2]);
      }
    }
  }
  return circuit;
}

Circuit trotter_circuit(const XYZHamiltonian& ham, double dt, std::size_t steps) {
  const Ansatz shape = build_brickwork_ansatz(ham.n, steps, ham, dt);
  const auto theta = trotter_initialize(shape, ham, dt, std::string(ham.n, '0'));
  Circuit full = ansatz_circuit(shape, theta);
  Circuit circuit;
  circuit.n = ham.n;
  // drop the (all-zero) state-preparation rotations
  circuit.gates.assign(full.gates.begin() + static_cast<std::ptrdiff_t>(3 * ham.n), full.gates.end());
  return circuit;
}

std::size_t cnot_depth(const Ansatz& ansatz) {
  return cnot_depth(ansatz_circuit(ansatz, ParamVector(ansatz.num_parameters, 0.0)));
}

std::size_t trotter_cnot_depth(const XYZHamiltonian& ham, std::size_t steps) {
  return cnot_depth(trotter_circuit(ham, 0.0, steps));
}

std::vector<std::pair<ColumnTag, std::size_t>> two_site_slots(const Ansatz& ansatz) {
  std::vector<std::pair<ColumnTag, std::size_t>> out;
  for (const auto& column : ansatz.columns)
    for (const auto& slot : column.slots) out.emplace_back(column.tag, slot.left_site);
  return out;
}

std::vector<std::pair<ColumnTag, std::size_t>> two_site_slots(const GateSchedule& schedule) {
  std::vector<std::pair<ColumnTag, std::size_t>> out;
  for (const auto& column : schedule.columns)
    for (const auto& gate : column.gates)
      if (gate.width() == 2) out.emplace_back(column.tag, gate.site);
  return out;
}

}  // namespace aqct
