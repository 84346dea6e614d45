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

#include "aqct/error.hpp"
#include "aqct/hamiltonian.hpp"
#include "aqct/mps.hpp"
#include "aqct/statevector.hpp"
#include "test_util.hpp"

using namespace aqct;
using aqct::testing::max_abs_diff;
using aqct::testing::random_schedule;
using aqct::testing::random_unitary;

TEST(Mps, product_state_amplitudes) {
  const Mps psi = from_product_state("0110");
  EXPECT_EQ(psi.size(), 4u);
  EXPECT_EQ(psi.max_bond(), 1u);
  EXPECT_NEAR(std::abs(amplitude(psi, "0110")), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(amplitude(psi, "0111")), 0.0, 1e-15);
  EXPECT_NEAR(psi.norm(), 1.0, 1e-15);
}

TEST(Mps, rejects_bad_input) {
  EXPECT_THROW(from_product_state(""), InvalidInput);
  EXPECT_THROW(from_product_state("01a"), InvalidInput);
  const Mps psi = from_product_state("00");
  EXPECT_THROW(apply_single_site_gate(psi, Mat2(2 * Mat2::Identity()), 0), InvalidInput);
  EXPECT_THROW(apply_two_site_gate(psi, Mat4::Identity(), 1, {}), InvalidInput);
  EXPECT_THROW(amplitude(psi, "000"), InvalidInput);
  TruncationPolicy bad;
  bad.chi_max = 0;
  EXPECT_THROW(bad.validate(), InvalidInput);
}

TEST(Mps, hadamard_on_site_zero) {
  Mat2 h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  const Mps psi = apply_single_site_gate(from_product_state("00"), h, 0);
  EXPECT_NEAR(amplitude(psi, "00").real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(amplitude(psi, "10").real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(amplitude(psi, "01")), 0.0, 1e-15);
}

TEST(Mps, bell_pair_has_bond_two) {
  Mat2 h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  Mps psi = apply_single_site_gate(from_product_state("00"), h, 0);
  psi = apply_two_site_gate(psi, cnot_left_control(), 0, {});
  EXPECT_EQ(psi.bond_dim(0), 2u);
  EXPECT_NEAR(amplitude(psi, "11").real(), 1 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(psi.discarded_weight(), 0.0, 1e-15);
}

TEST(Mps, random_circuits_match_statevector) {
  Rng rng(7);
  for (std::size_t n : {3u, 5u, 7u}) {
    const auto schedule = random_schedule(n, 4, rng);
    const std::string bits = aqct::testing::random_bits(n, rng);
    const Mps psi = apply_schedule(from_product_state(bits), schedule, {});
    const DenseState ref = sv_apply_schedule(sv_product_state(bits), schedule);
    EXPECT_LT(max_abs_diff(to_statevector(psi), ref), 1e-12) << n;
  }
}

TEST(Mps, unitary_gates_preserve_norm_without_renormalization) {
  Rng rng(11);
  TruncationPolicy exact;
  exact.renormalize = false;
  Mps psi = random_mps(8, 8, 3);
  for (int i = 0; i < 30; ++i) {
    const auto site = static_cast<std::size_t>(rng.next() % 7);
    psi = apply_two_site_gate(psi, random_unitary(4, rng), site, exact);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
  }
}

TEST(Mps, truncation_is_monotone_in_bond_cap) {
  Rng rng(5);
  const auto schedule = random_schedule(10, 6, rng);
  const Mps exact = apply_schedule(from_product_state("0000000000"), schedule, {});
  double previous = 0.0;
  for (std::size_t chi : {1u, 2u, 4u, 8u, 16u, 32u}) {
    const Mps psi = apply_schedule(from_product_state("0000000000"), schedule,
                                   TruncationPolicy::bounded(chi));
    EXPECT_LE(psi.max_bond(), chi);
    const double f = fidelity(psi, exact);
    EXPECT_GE(f, previous - 1e-9) << chi;
    previous = f;
  }
  EXPECT_NEAR(previous, 1.0, 1e-10);
}

TEST(Mps, discarded_weight_reported) {
  Rng rng(9);
  const auto schedule = random_schedule(8, 6, rng);
  const Mps psi = apply_schedule(from_product_state("00000000"), schedule, TruncationPolicy::bounded(2));
  EXPECT_GT(psi.discarded_weight(), 1e-6);
  EXPECT_LE(psi.max_bond(), 2u);
  EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
}

TEST(Mps, canonical_form_after_moving_center) {
  Mps psi = random_mps(7, 6, 21);
  psi.move_center(3);
  ASSERT_EQ(psi.center(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& t = psi.site(i);
    const MatX g = t.m[0].adjoint() * t.m[0] + t.m[1].adjoint() * t.m[1];
    EXPECT_LT((g - MatX::Identity(g.rows(), g.cols())).norm(), 1e-12) << i;
  }
  for (std::size_t i = 4; i < 7; ++i) {
    const auto& t = psi.site(i);
    const MatX g = t.m[0] * t.m[0].adjoint() + t.m[1] * t.m[1].adjoint();
    EXPECT_LT((g - MatX::Identity(g.rows(), g.cols())).norm(), 1e-12) << i;
  }
  const auto& c = psi.site(3);
  EXPECT_NEAR(std::sqrt(c.m[0].squaredNorm() + c.m[1].squaredNorm()), psi.norm(), 1e-12);
}

TEST(Mps, canonicalize_keeps_state) {
  const Mps psi = random_mps(6, 4, 2);
  const DenseState before = to_statevector(psi);
  for (std::size_t c = 0; c < 6; ++c)
    EXPECT_LT(max_abs_diff(to_statevector(canonicalize(psi, c)), before), 1e-12);
}

TEST(Mps, inner_product_is_hermitian) {
  const Mps a = random_mps(6, 4, 1), b = random_mps(6, 3, 2);
  const cplx ab = inner_product(a, b), ba = inner_product(b, a);
  EXPECT_NEAR(std::abs(ab - std::conj(ba)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(ab - to_statevector(a).dot(to_statevector(b))), 0.0, 1e-13);
  EXPECT_NEAR(fidelity(a, a), 1.0, 1e-12);
}

TEST(Mps, hamming_weight_norms_match_dense) {
  const Mps psi = random_mps(7, 5, 13);
  const DenseState v = to_statevector(psi);
  std::vector<double> ref(8, 0.0);
  for (Eigen::Index x = 0; x < v.size(); ++x) ref[__builtin_popcountll(x)] += std::norm(v(x));
  const auto w = hamming_weight_norms(psi, 7);
  for (std::size_t m = 0; m <= 7; ++m) EXPECT_NEAR(w[m], ref[m], 1e-13) << m;
  EXPECT_EQ(hamming_weight_norms(psi, 2).size(), 3u);
}

TEST(Mps, expectations_match_dense) {
  Rng rng(4);
  const Mps psi = random_mps(5, 4, 8);
  const DenseState v = to_statevector(psi);
  const Mat2 op1 = random_unitary(2, rng) + random_unitary(2, rng);
  const Mat4 op2 = random_unitary(4, rng);
  DenseState w = v;
  sv_apply_one_site(w, op1, 2);
  EXPECT_NEAR(std::abs(expectation_one_site(psi, op1, 2) - v.dot(w)), 0.0, 1e-13);
  w = v;
  sv_apply_two_site(w, op2, 3);
  EXPECT_NEAR(std::abs(expectation_two_site(psi, op2, 3) - v.dot(w)), 0.0, 1e-13);
}

TEST(Mps, left_sweep_places_center_left) {
  Rng rng(3);
  Mps psi = random_mps(6, 4, 5);
  psi.move_center(3);
  psi.apply_two_site(random_unitary(4, rng), 2, {}, Sweep::kLeft);
  EXPECT_EQ(psi.center(), 2u);
  psi.apply_two_site(random_unitary(4, rng), 2, {}, Sweep::kRight);
  EXPECT_EQ(psi.center(), 3u);
}

TEST(Mps, random_mps_is_deterministic) {
  const Mps a = random_mps(6, 4, 99), b = random_mps(6, 4, 99), c = random_mps(6, 4, 100);
  EXPECT_NEAR(fidelity(a, b), 1.0, 1e-14);
  EXPECT_LT(fidelity(a, c), 0.99);
}
