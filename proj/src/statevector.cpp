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

#include "aqct/statevector.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "aqct/error.hpp"

namespace aqct {

namespace {

void check_dense_size(std::size_t n, std::size_t limit) {
  if (n > limit)
    throw SizeLimitError("dense simulation limited to " + std::to_string(limit) + " qubits, got " +
                         std::to_string(n));
}

}  // namespace

std::size_t qubit_count(const DenseState& state) {
  const auto dim = static_cast<std::size_t>(state.size());
  if (dim < 2 || (dim & (dim - 1)) != 0)
    throw InvalidInput("state dimension " + std::to_string(dim) + " is not a power of two");
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

DenseState sv_product_state(std::string_view bits) {
  if (bits.empty()) throw InvalidInput("empty product state");
  check_dense_size(bits.size(), kMaxDenseQubits);
  std::size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw InvalidInput("product state must be a bit string");
    index = 2 * index + static_cast<std::size_t>(c - '0');
  }
  DenseState state = DenseState::Zero(Eigen::Index{1} << bits.size());
  state(static_cast<Eigen::Index>(index)) = 1.0;
  return state;
}

void sv_apply_one_site(DenseState& state, const Mat2& u, std::size_t site) {
  const std::size_t n = qubit_count(state);
  if (site >= n) throw InvalidInput("site out of range");
  const Eigen::Index stride = Eigen::Index{1} << (n - 1 - site);
  for (Eigen::Index base = 0; base < state.size(); base += 2 * stride) {
    for (Eigen::Index off = 0; off < stride; ++off) {
      const Eigen::Index i0 = base + off, i1 = i0 + stride;
      const cplx a = state(i0), b = state(i1);
      state(i0) = u(0, 0) * a + u(0, 1) * b;
      state(i1) = u(1, 0) * a + u(1, 1) * b;
    }
  }
}

void sv_apply_two_site(DenseState& state, const Mat4& u, std::size_t left) {
  const std::size_t n = qubit_count(state);
  if (left + 1 >= n) throw InvalidInput("two-site gate out of range");
  const Eigen::Index sr = Eigen::Index{1} << (n - 2 - left);
  const Eigen::Index sl = 2 * sr;
  for (Eigen::Index x = 0; x < state.size(); ++x) {
    if ((x & sl) || (x & sr)) continue;
    const Eigen::Index idx[4] = {x, x + sr, x + sl, x + sl + sr};
    Eigen::Vector4cd v;
    for (int k = 0; k < 4; ++k) v(k) = state(idx[k]);
    const Eigen::Vector4cd w = u * v;
    for (int k = 0; k < 4; ++k) state(idx[k]) = w(k);
  }
}

DenseState sv_apply_schedule(DenseState state, const GateSchedule& schedule) {
  if (qubit_count(state) != schedule.n) throw InvalidInput("schedule size differs from state size");
  for (const auto& column : schedule.columns) {
    for (const auto& gate : column.gates) {
      if (gate.width() == 1)
        sv_apply_one_site(state, Mat2(gate.u), gate.site);
      else
        sv_apply_two_site(state, Mat4(gate.u), gate.site);
    }
  }
  return state;
}

DenseState sv_apply_ansatz(DenseState state, const Ansatz& ansatz, std::span<const double> theta) {
  return sv_apply_schedule(std::move(state), ansatz_schedule(ansatz, theta));
}

MatX sv_schedule_matrix(const GateSchedule& schedule) {
  check_dense_size(schedule.n, 10);
  const Eigen::Index dim = Eigen::Index{1} << schedule.n;
  MatX out(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    DenseState e = DenseState::Zero(dim);
    e(col) = 1.0;
    out.col(col) = sv_apply_schedule(std::move(e), schedule);
  }
  return out;
}

MatX sv_hamiltonian(const XYZHamiltonian& ham) {
  ham.validate();
  const std::size_t n = ham.n;
  check_dense_size(n, kMaxExactEvolutionQubits);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  auto bit = [n](Eigen::Index x, std::size_t i) { return (x >> (n - 1 - i)) & 1; };
  for (Eigen::Index x = 0; x < dim; ++x) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const auto si = bit(x, i), sj = bit(x, i + 1);
      const double zz = (si == sj) ? 1.0 : -1.0;
      h(x, x) -= ham.delta[i] * zz / 4;
      const Eigen::Index y = x ^ (Eigen::Index{3} << (n - 2 - i));
      // XX|s s'> = |~s ~s'>, YY|s s'> = -zz |~s ~s'>
      h(y, x) -= ham.alpha[i] / 4 - ham.beta[i] * zz / 4;
    }
    for (std::size_t i = 0; i < n; ++i) h(x, x) += ham.h[i] * (bit(x, i) ? -0.5 : 0.5);
  }
  return h.cast<cplx>();
}

DenseState sv_exact_evolution(const XYZHamiltonian& ham, const DenseState& psi0, double t) {
  if (qubit_count(psi0) != ham.n) throw InvalidInput("state size differs from Hamiltonian size");
  // The Hamiltonian is real symmetric in the computational basis.
  const Eigen::MatrixXd h = sv_hamiltonian(ham).real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  const Eigen::MatrixXcd v = eig.eigenvectors().cast<cplx>();
  Eigen::VectorXcd coeff = v.adjoint() * psi0;
  for (Eigen::Index k = 0; k < coeff.size(); ++k)
    coeff(k) *= std::exp(-kI * eig.eigenvalues()(k) * t);
  return v * coeff;
}

double sv_fidelity(const DenseState& a, const DenseState& b) {
  if (a.size() != b.size()) throw InvalidInput("state dimensions differ");
  return std::norm(a.dot(b));
}

DenseState to_statevector(const Mps& psi) {
  const std::size_t n = psi.size();
  check_dense_size(n, kMaxDenseQubits);
  MatX left = MatX::Ones(1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = psi.site(i);
    MatX next(left.rows() * 2, static_cast<Eigen::Index>(t.right_dim()));
    for (Eigen::Index r = 0; r < left.rows(); ++r)
      for (int s = 0; s < 2; ++s) next.row(2 * r + s) = left.row(r) * t.m[s];
    left = std::move(next);
  }
  return left.col(0);
}

Mps from_statevector(const DenseState& state, const TruncationPolicy& policy) {
  const std::size_t n = qubit_count(state);
  policy.validate();
  std::vector<SiteTensor> tensors(n);
  // rest(a, x): bond index a times remaining basis index x
  MatX rest = state.transpose();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Eigen::Index chi = rest.rows();
    const Eigen::Index half = rest.cols() / 2;
    MatX m(2 * chi, half);
    for (int s = 0; s < 2; ++s) m.middleRows(s * chi, chi) = rest.middleCols(s * half, half);
    Eigen::BDCSVD<MatX> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    Eigen::Index keep = 1;
    while (keep < sv.size() && static_cast<std::size_t>(keep) < policy.chi_max &&
           sv(keep) > policy.cutoff * sv(0))
      ++keep;
    for (int s = 0; s < 2; ++s) tensors[i].m[s] = svd.matrixU().block(s * chi, 0, chi, keep);
    rest = sv.head(keep).cast<cplx>().asDiagonal() * svd.matrixV().leftCols(keep).adjoint();
  }
  for (int s = 0; s < 2; ++s) tensors[n - 1].m[s] = rest.col(s);
  Mps out(std::move(tensors), n - 1);
  if (policy.renormalize && out.norm() > 0) out.scale(1.0 / out.norm());
  return out;
}

}  // namespace aqct
