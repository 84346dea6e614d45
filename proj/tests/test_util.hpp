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

#include <Eigen/QR>
#include <string>

#include "aqct/circuit.hpp"
#include "aqct/linalg.hpp"
#include "aqct/mps.hpp"
#include "aqct/random.hpp"
#include "aqct/schedule.hpp"
#include "aqct/statevector.hpp"

namespace aqct::testing {

// Haar-ish random unitary from the QR of a complex Gaussian matrix.
inline MatX random_unitary(Eigen::Index dim, Rng& rng) {
  MatX g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = cplx{rng.normal(), rng.normal()};
  Eigen::HouseholderQR<MatX> qr(g);
  MatX q = qr.householderQ() * MatX::Identity(dim, dim);
  const MatX r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

inline std::string random_bits(std::size_t n, Rng& rng) {
  std::string bits(n, '0');
  for (auto& c : bits) c = rng.uniform() < 0.5 ? '0' : '1';
  return bits;
}

inline std::vector<double> random_angles(std::size_t count, Rng& rng) {
  std::vector<double> out(count);
  for (auto& a : out) a = rng.uniform(-kPi, kPi);
  return out;
}

// Brickwork of random two-site unitaries plus random single-site gates.
inline GateSchedule random_schedule(std::size_t n, std::size_t depth, Rng& rng) {
  GateSchedule s;
  s.n = n;
  for (std::size_t d = 0; d < depth; ++d) {
    GateColumn singles{ColumnTag::kInitial, {}};
    for (std::size_t q = 0; q < n; ++q) singles.gates.push_back({q, random_unitary(2, rng)});
    s.columns.push_back(std::move(singles));
    GateColumn pairs{d % 2 ? ColumnTag::kOddFull : ColumnTag::kEvenFull, {}};
    for (std::size_t i = d % 2; i + 1 < n; i += 2) pairs.gates.push_back({i, random_unitary(4, rng)});
    s.columns.push_back(std::move(pairs));
  }
  return s;
}

// Executes a primitive-gate circuit on a dense state. CNOTs must act on
// neighbouring qubits.
inline DenseState run_circuit(DenseState state, const Circuit& circuit) {
  for (const auto& g : circuit.gates) {
    if (g.name == "rx") sv_apply_one_site(state, rx(g.angles[0]), g.qubits[0]);
    if (g.name == "ry") sv_apply_one_site(state, ry(g.angles[0]), g.qubits[0]);
    if (g.name == "rz") sv_apply_one_site(state, rz(g.angles[0]), g.qubits[0]);
    if (g.name == "cx") {
      const auto c = g.qubits[0], t = g.qubits[1];
      if (c + 1 == t) sv_apply_two_site(state, cnot_left_control(), c);
      else sv_apply_two_site(state, cnot_right_control(), t);
    }
  }
  return state;
}

inline double max_abs_diff(const DenseState& a, const DenseState& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace aqct::testing
