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
#include "aqct/linalg.hpp"

using namespace aqct;

TEST(Linalg, rotations_are_exponentials) {
  const double a = 0.7;
  const Mat2 id = Mat2::Identity();
  EXPECT_LT((rx(a) - (std::cos(a / 2) * id - kI * std::sin(a / 2) * pauli_x())).norm(), 1e-15);
  EXPECT_LT((ry(a) - (std::cos(a / 2) * id - kI * std::sin(a / 2) * pauli_y())).norm(), 1e-15);
  EXPECT_LT((rz(a) - (std::cos(a / 2) * id - kI * std::sin(a / 2) * pauli_z())).norm(), 1e-15);
}

TEST(Linalg, cnot_orientation) {
  // basis index 2 * s_left + s_right
  const Mat4 l = cnot_left_control();
  EXPECT_EQ(l(3, 2), cplx(1.0));
  EXPECT_EQ(l(1, 1), cplx(1.0));
  const Mat4 r = cnot_right_control();
  EXPECT_EQ(r(3, 1), cplx(1.0));
  EXPECT_EQ(r(2, 2), cplx(1.0));
}

TEST(Linalg, kron_order) {
  const Mat4 k = kron(pauli_x(), Mat2::Identity());
  EXPECT_EQ(k(2, 0), cplx(1.0));
  EXPECT_EQ(k(1, 0), cplx(0.0));
}

TEST(Linalg, distance_up_to_phase) {
  const Mat4 u = kron(rx(0.3), ry(1.1));
  EXPECT_LT(distance_up_to_phase(std::exp(kI * 0.9) * u, u), 1e-14);
  EXPECT_GT(distance_up_to_phase(kron(rx(0.4), ry(1.1)), u), 1e-3);
  EXPECT_TRUE(is_unitary(u));
  EXPECT_FALSE(is_unitary(MatX(2 * Mat2::Identity())));
}
