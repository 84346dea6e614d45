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

#include "aqct/linalg.hpp"

#include <cmath>
#include <limits>

namespace aqct {

Mat2 pauli_x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

Mat2 pauli_y() {
  Mat2 m;
  m << 0, -kI, kI, 0;
  return m;
}

Mat2 pauli_z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

Mat2 rx(double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  Mat2 m;
  m << c, -kI * s, -kI * s, c;
  return m;
}

Mat2 ry(double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  Mat2 m;
  m << c, -s, s, c;
  return m;
}

Mat2 rz(double angle) {
  Mat2 m;
  m << std::polar(1.0, -angle / 2), 0, 0, std::polar(1.0, angle / 2);
  return m;
}

Mat4 cnot_left_control() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(1, 1) = 1;
  m(2, 3) = m(3, 2) = 1;
  return m;
}

Mat4 cnot_right_control() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(2, 2) = 1;
  m(1, 3) = m(3, 1) = 1;
  return m;
}

Mat4 kron(const Mat2& left, const Mat2& right) {
  Mat4 m;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) m(2 * a + c, 2 * b + d) = left(a, b) * right(c, d);
  return m;
}

double unitarity_defect(const MatX& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return (u.adjoint() * u - MatX::Identity(u.rows(), u.cols())).norm();
}

bool is_unitary(const MatX& u, double tol) { return unitarity_defect(u) <= tol; }

double distance_up_to_phase(const MatX& a, const MatX& b) {
  const cplx overlap = (b.adjoint() * a).trace();
  const cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx{1.0, 0.0};
  return (a - phase * b).norm();
}

}  // namespace aqct
