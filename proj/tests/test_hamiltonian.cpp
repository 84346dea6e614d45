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

#include <Eigen/Eigenvalues>
#include <cmath>

#include "aqct/error.hpp"
#include "aqct/hamiltonian.hpp"
#include "aqct/statevector.hpp"
#include "test_util.hpp"

using namespace aqct;

namespace {

// exp(i dt h) for Hermitian h by eigendecomposition.
MatX expi(const MatX& h, double dt) {
  Eigen::SelfAdjointEigenSolver<MatX> eig(h);
  const Eigen::VectorXcd phases =
      (kI * dt * eig.eigenvalues().cast<cplx>()).array().exp().matrix();
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace

TEST(Hamiltonian, two_site_unitary_matches_matrix_exponential) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2), d = rng.uniform(-2, 2);
    const double dt = rng.uniform(-1, 1);
    const MatX ref = expi(bond_operator(a, b, d), dt);
    EXPECT_LT((two_site_unitary(a, b, d, dt) - ref).norm(), 1e-13);
  }
}

TEST(Hamiltonian, two_site_unitary_inverse_and_identity) {
  const Mat4 u = two_site_unitary(0.75, 0.5, 1.5, 0.3);
  EXPECT_TRUE(is_unitary(u, 1e-14));
  EXPECT_LT((u * two_site_unitary(0.75, 0.5, 1.5, -0.3) - Mat4::Identity()).norm(), 1e-14);
  EXPECT_LT((two_site_unitary(0.75, 0.5, 1.5, 0.0) - Mat4::Identity()).norm(), 1e-15);
}

TEST(Hamiltonian, field_rotation_is_half_angle_rz) {
  EXPECT_LT((field_rotation(0.8, 0.5, true) - rz(0.8 * 0.5 / 2)).norm(), 1e-15);
  EXPECT_LT((field_rotation(0.8, 0.5, false) - rz(0.8 * 0.5)).norm(), 1e-15);
}

TEST(Hamiltonian, presets) {
  const auto xxz = hamiltonian_preset("xxz", 6);
  EXPECT_EQ(xxz.alpha, std::vector<double>(5, 0.75));
  EXPECT_EQ(xxz.delta, std::vector<double>(5, 1.5));
  EXPECT_EQ(xxz.h, std::vector<double>(6, 0.0));
  const auto r1 = hamiltonian_preset("random-xyz", 6, 4), r2 = hamiltonian_preset("random-xyz", 6, 4);
  EXPECT_EQ(r1, r2);
  for (double v : r1.beta) {
    EXPECT_GE(v, 0.375);
    EXPECT_LE(v, 1.125);
  }
  EXPECT_FALSE(r1 == hamiltonian_preset("random-xyz", 6, 5));
  EXPECT_THROW(hamiltonian_preset("ising", 4), InvalidInput);
}

TEST(Hamiltonian, json_round_trip) {
  auto ham = random_xyz(5, 0.1, 0.9, 12);
  ham.h = {0.1, -0.2, 0.3, 0.0, 0.5};
  const nlohmann::json j = ham;
  EXPECT_EQ(j.get<XYZHamiltonian>(), ham);
}

TEST(Hamiltonian, validate_rejects_bad_shapes) {
  auto ham = XYZHamiltonian::uniform(4, 1, 1, 1);
  ham.alpha.pop_back();
  EXPECT_THROW(ham.validate(), InvalidInput);
  ham = XYZHamiltonian::uniform(4, 1, 1, 1);
  ham.h[2] = std::nan("");
  EXPECT_THROW(ham.validate(), InvalidInput);
}

TEST(Hamiltonian, schedule_layout) {
  const auto ham = XYZHamiltonian::uniform(6, 1, 1, 1, 0.2);
  const auto s = build_trotter_schedule(ham, 0.1, 3);
  std::size_t even = 0, odd = 0, field = 0;
  for (const auto& c : s.columns) {
    even += c.tag == ColumnTag::kEvenHalf || c.tag == ColumnTag::kEvenFull;
    odd += c.tag == ColumnTag::kOddFull;
    field += c.tag == ColumnTag::kField;
  }
  EXPECT_EQ(even, 4u);
  EXPECT_EQ(odd, 3u);
  EXPECT_EQ(field, 6u);
  EXPECT_EQ(s.columns.front().tag, ColumnTag::kEvenHalf);
  EXPECT_EQ(s.columns.back().tag, ColumnTag::kEvenHalf);
  validate(s);
}

TEST(Hamiltonian, fused_schedule_equals_repeated_second_order_step) {
  const auto ham = random_xyz(4, 0.5, 1.0, 2);
  auto fielded = ham;
  fielded.h = {0.3, -0.1, 0.2, 0.4};
  const MatX one = sv_schedule_matrix(build_trotter_schedule(fielded, 0.2, 1));
  const MatX three = sv_schedule_matrix(build_trotter_schedule(fielded, 0.2, 3));
  EXPECT_LT((three - one * one * one).norm(), 1e-12);
}

TEST(Hamiltonian, trotter_error_is_second_order) {
  const auto ham = hamiltonian_preset("xxx", 6);
  auto fielded = ham;
  for (std::size_t i = 0; i < 6; ++i) fielded.h[i] = 0.2 * static_cast<double>(i % 3);
  const DenseState psi0 = sv_product_state("101010");
  const DenseState exact = sv_exact_evolution(fielded, psi0, 1.0);
  std::vector<double> errors;
  for (std::size_t steps : {5u, 10u, 20u, 40u}) {
    const DenseState v = sv_apply_schedule(psi0, build_trotter_schedule(fielded, 1.0 / steps, steps));
    errors.push_back((v - exact).norm());
  }
  for (std::size_t i = 1; i < errors.size(); ++i) {
    const double slope = std::log2(errors[i - 1] / errors[i]);
    EXPECT_NEAR(slope, 2.0, 0.15) << i;
  }
}

TEST(Hamiltonian, tebd_conserves_sz_for_xxz) {
  auto ham = hamiltonian_preset("xxz", 10);
  for (std::size_t i = 0; i < 10; ++i) ham.h[i] = 0.1 * static_cast<double>(i);
  const Mps psi0 = from_product_state("1010011010");
  const Mps psi = tebd_evolve(psi0, ham, 0.05, 20, TruncationPolicy::bounded(16));
  EXPECT_NEAR(total_sz(psi), total_sz(psi0), 1e-9);
}

TEST(Hamiltonian, tebd_energy_drift_is_small) {
  const auto ham = hamiltonian_preset("random-xyz", 8, 3);
  const Mps psi0 = from_product_state("10101010");
  const double e0 = energy(psi0, ham);
  const Mps psi = tebd_evolve(psi0, ham, 0.02, 50, {});
  EXPECT_NEAR(energy(psi, ham), e0, 1e-3);
  const DenseState v = to_statevector(psi);
  EXPECT_NEAR(energy(psi, ham), v.dot(sv_hamiltonian(ham) * v).real(), 1e-12);
}

TEST(Hamiltonian, tebd_matches_exact_evolution_at_fine_step) {
  const auto ham = hamiltonian_preset("xxx", 8);
  const Mps psi = tebd_evolve(from_product_state("10101010"), ham, 0.05, 40, {});
  const DenseState exact = sv_exact_evolution(ham, sv_product_state("10101010"), 2.0);
  EXPECT_GE(sv_fidelity(to_statevector(psi), exact), 1 - 1e-5);
}

TEST(Hamiltonian, tebd_zero_steps_is_identity) {
  const Mps psi0 = from_product_state("0110");
  const Mps psi = tebd_evolve(psi0, hamiltonian_preset("xxx", 4), 0.1, 0, {});
  EXPECT_NEAR(fidelity(psi, psi0), 1.0, 1e-15);
}

TEST(Hamiltonian, rejects_size_mismatch) {
  EXPECT_THROW(tebd_evolve(from_product_state("01"), hamiltonian_preset("xxx", 4), 0.1, 1, {}),
               InvalidInput);
}
