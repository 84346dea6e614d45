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

#include <complex>
#include <cstddef>
#include <numbers>

#include <Eigen/Dense>

namespace aqct {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using MatX = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// Two-qubit matrices use the basis index 2*s_left + s_right, i.e. the left
// (lower-numbered) site is the most significant bit.

Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();

/// exp(-i angle P / 2) for the Pauli matrix P.
Mat2 rx(double angle);
Mat2 ry(double angle);
Mat2 rz(double angle);

/// CNOT with the control on the left site.
Mat4 cnot_left_control();
/// CNOT with the control on the right site.
Mat4 cnot_right_control();

/// Kronecker product left ⊗ right in the two-site basis convention above.
Mat4 kron(const Mat2& left, const Mat2& right);

/// Frobenius distance of U†U from the identity.
double unitarity_defect(const MatX& u);
bool is_unitary(const MatX& u, double tol = 1e-10);

/// min over global phases γ of ||a - e^{iγ} b||_F.
double distance_up_to_phase(const MatX& a, const MatX& b);

}  // namespace aqct
