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

#include "aqct/mps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aqct/error.hpp"
#include "aqct/random.hpp"

namespace aqct {

namespace {

using Index = Eigen::Index;

// m = q * r with q having orthonormal columns, k = min(rows, cols).
void thin_qr(const MatX& m, MatX& q, MatX& r) {
  Eigen::HouseholderQR<MatX> qr(m);
  const Index k = std::min(m.rows(), m.cols());
  q = qr.householderQ() * MatX::Identity(m.rows(), k);
  r = qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
}

MatX transfer(const MatX& env, const SiteTensor& bra, const SiteTensor& ket) {
  return bra.m[0].adjoint() * env * ket.m[0] + bra.m[1].adjoint() * env * ket.m[1];
}

MatX transfer_with_op(const MatX& env, const SiteTensor& bra, const SiteTensor& ket,
                      const Mat2& op) {
  MatX out = MatX::Zero(bra.right_dim(), ket.right_dim());
  for (int s = 0; s < 2; ++s) {
    const MatX left = bra.m[s].adjoint() * env;
    for (int t = 0; t < 2; ++t) {
      if (op(s, t) == cplx{}) continue;
      out.noalias() += op(s, t) * (left * ket.m[t]);
    }
  }
  return out;
}

void check_bits(std::string_view bits, std::size_t n) {
  if (bits.size() != n)
    throw InvalidInput("basis string has length " + std::to_string(bits.size()) + ", expected " +
                       std::to_string(n));
  for (char c : bits)
    if (c != '0' && c != '1') throw InvalidInput("basis string must contain only 0 and 1");
}

}  // namespace

void TruncationPolicy::validate() const {
  if (chi_max < 1) throw InvalidInput("chi_max must be at least 1");
  if (!(cutoff >= 0.0 && cutoff < 1.0)) throw InvalidInput("cutoff must lie in [0, 1)");
}

Mps::Mps(std::vector<SiteTensor> tensors, std::optional<std::size_t> center)
    : tensors_(std::move(tensors)), center_(center) {
  if (tensors_.empty()) throw InvalidInput("MPS needs at least one site");
  for (std::size_t i = 0; i < tensors_.size(); ++i) {
    const auto& t = tensors_[i];
    if (t.m[0].rows() != t.m[1].rows() || t.m[0].cols() != t.m[1].cols())
      throw InvalidInput("site " + std::to_string(i) + ": physical slices differ in shape");
    if (i + 1 < tensors_.size() && t.right_dim() != tensors_[i + 1].left_dim())
      throw InvalidInput("bond " + std::to_string(i) + ": dimension mismatch");
  }
  if (tensors_.front().left_dim() != 1 || tensors_.back().right_dim() != 1)
    throw InvalidInput("boundary bond dimensions must be 1");
  if (center_ && *center_ >= tensors_.size()) throw InvalidInput("center out of range");
  peak_bond_ = max_bond();
}

Mps Mps::product_state(std::string_view bits) {
  if (bits.empty()) throw InvalidInput("product state needs a nonempty bit string");
  check_bits(bits, bits.size());
  std::vector<SiteTensor> tensors(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const int up = bits[i] == '1' ? 1 : 0;
    tensors[i].m[0] = MatX::Constant(1, 1, up ? 0.0 : 1.0);
    tensors[i].m[1] = MatX::Constant(1, 1, up ? 1.0 : 0.0);
  }
  return Mps(std::move(tensors), std::size_t{0});
}

std::size_t Mps::max_bond() const {
  std::size_t chi = 1;
  for (std::size_t i = 0; i + 1 < tensors_.size(); ++i) chi = std::max(chi, bond_dim(i));
  return chi;
}

double Mps::norm() const {
  if (center_) {
    const auto& t = tensors_[*center_];
    return std::sqrt(t.m[0].squaredNorm() + t.m[1].squaredNorm());
  }
  return std::sqrt(std::max(0.0, inner_product(*this, *this).real()));
}

void Mps::scale(cplx factor) {
  auto& t = tensors_[center_.value_or(0)];
  t.m[0] *= factor;
  t.m[1] *= factor;
}

void Mps::shift_center_right(std::size_t i) {
  auto& a = tensors_[i];
  auto& b = tensors_[i + 1];
  const Index chi_l = a.m[0].rows();
  MatX stacked(2 * chi_l, a.m[0].cols());
  stacked << a.m[0], a.m[1];
  MatX q, r;
  thin_qr(stacked, q, r);
  a.m[0] = q.topRows(chi_l);
  a.m[1] = q.bottomRows(chi_l);
  b.m[0] = r * b.m[0];
  b.m[1] = r * b.m[1];
  center_ = i + 1;
}

void Mps::shift_center_left(std::size_t i) {
  auto& a = tensors_[i - 1];
  auto& b = tensors_[i];
  const Index chi_r = b.m[0].cols();
  MatX wide(b.m[0].rows(), 2 * chi_r);
  wide << b.m[0], b.m[1];
  MatX q, r;
  thin_qr(wide.adjoint(), q, r);
  const MatX qh = q.adjoint();
  b.m[0] = qh.leftCols(chi_r);
  b.m[1] = qh.rightCols(chi_r);
  const MatX rh = r.adjoint();
  a.m[0] = a.m[0] * rh;
  a.m[1] = a.m[1] * rh;
  center_ = i - 1;
}

void Mps::canonicalize_inplace(std::size_t center) {
  if (center >= tensors_.size()) throw InvalidInput("center out of range");
  for (std::size_t i = 0; i < center; ++i) shift_center_right(i);
  for (std::size_t i = tensors_.size() - 1; i > center; --i) shift_center_left(i);
  center_ = center;
}

void Mps::move_center(std::size_t center) {
  if (center >= tensors_.size()) throw InvalidInput("center out of range");
  if (!center_) {
    canonicalize_inplace(center);
    return;
  }
  while (*center_ < center) shift_center_right(*center_);
  while (*center_ > center) shift_center_left(*center_);
}

void Mps::apply_one_site(const Mat2& u, std::size_t site) {
  auto& t = tensors_.at(site);
  MatX a0 = u(0, 0) * t.m[0] + u(0, 1) * t.m[1];
  t.m[1] = u(1, 0) * t.m[0] + u(1, 1) * t.m[1];
  t.m[0] = std::move(a0);
}

double Mps::apply_two_site(const Mat4& u, std::size_t left, const TruncationPolicy& policy,
                           Sweep sweep) {
  if (left + 1 >= tensors_.size()) throw InvalidInput("two-site gate leaves the chain");
  if (!center_ || (*center_ != left && *center_ != left + 1)) move_center(left);

  auto& a = tensors_[left];
  auto& b = tensors_[left + 1];
  const Index chi_l = a.m[0].rows();
  const Index chi_r = b.m[0].cols();

  MatX pair[2][2];
  for (int t1 = 0; t1 < 2; ++t1)
    for (int t2 = 0; t2 < 2; ++t2) pair[t1][t2] = a.m[t1] * b.m[t2];

  MatX theta(2 * chi_l, 2 * chi_r);
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) {
      auto block = theta.block(s1 * chi_l, s2 * chi_r, chi_l, chi_r);
      block.setZero();
      for (int t1 = 0; t1 < 2; ++t1)
        for (int t2 = 0; t2 < 2; ++t2) {
          const cplx c = u(2 * s1 + s2, 2 * t1 + t2);
          if (c != cplx{}) block += c * pair[t1][t2];
        }
    }
  }

  Eigen::BDCSVD<MatX> svd(theta, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const Index full = sv.size();
  const double largest = full > 0 ? sv(0) : 0.0;
  Index keep = 0;
  while (keep < full && static_cast<std::size_t>(keep) < policy.chi_max &&
         sv(keep) > policy.cutoff * largest)
    ++keep;
  keep = std::max<Index>(keep, 1);

  const double total = sv.squaredNorm();
  const double kept = sv.head(keep).squaredNorm();
  const double discarded = total > 0.0 ? std::max(0.0, (total - kept) / total) : 0.0;

  Eigen::VectorXd s = sv.head(keep);
  if (policy.renormalize && kept > 0.0) s /= std::sqrt(kept);

  const MatX& uu = svd.matrixU();
  const MatX vh = svd.matrixV().leftCols(keep).adjoint();
  if (sweep == Sweep::kRight) {
    const MatX svh = s.asDiagonal() * vh;
    a.m[0] = uu.block(0, 0, chi_l, keep);
    a.m[1] = uu.block(chi_l, 0, chi_l, keep);
    b.m[0] = svh.leftCols(chi_r);
    b.m[1] = svh.rightCols(chi_r);
    center_ = left + 1;
  } else {
    const MatX us = uu.leftCols(keep) * s.asDiagonal();
    a.m[0] = us.topRows(chi_l);
    a.m[1] = us.bottomRows(chi_l);
    b.m[0] = vh.leftCols(chi_r);
    b.m[1] = vh.rightCols(chi_r);
    center_ = left;
  }
  discarded_weight_ += discarded;
  peak_bond_ = std::max(peak_bond_, static_cast<std::size_t>(keep));
  return discarded;
}

Mps from_product_state(std::string_view bits) { return Mps::product_state(bits); }

cplx inner_product(const Mps& a, const Mps& b) {
  if (a.size() != b.size())
    throw InvalidInput("inner_product: qubit counts differ (" + std::to_string(a.size()) + " vs " +
                       std::to_string(b.size()) + ")");
  MatX env = MatX::Ones(1, 1);
  for (std::size_t i = 0; i < a.size(); ++i) env = transfer(env, a.site(i), b.site(i));
  return env(0, 0);
}

double fidelity(const Mps& a, const Mps& b) { return std::norm(inner_product(a, b)); }

cplx amplitude(const Mps& psi, std::string_view bits) {
  check_bits(bits, psi.size());
  Eigen::RowVectorXcd v = Eigen::RowVectorXcd::Ones(1);
  for (std::size_t i = 0; i < psi.size(); ++i) v = v * psi.site(i).m[bits[i] == '1' ? 1 : 0];
  return v(0);
}

cplx amplitude(const Mps& psi, std::span<const std::uint8_t> bits) {
  if (bits.size() != psi.size()) throw InvalidInput("basis string length mismatch");
  Eigen::RowVectorXcd v = Eigen::RowVectorXcd::Ones(1);
  for (std::size_t i = 0; i < psi.size(); ++i) v = v * psi.site(i).m[bits[i] ? 1 : 0];
  return v(0);
}

Mps apply_single_site_gate(Mps psi, const Mat2& u, std::size_t site) {
  if (site >= psi.size()) throw InvalidInput("site out of range");
  if (!is_unitary(u)) throw InvalidInput("single-site gate is not unitary");
  psi.apply_one_site(u, site);
  return psi;
}

Mps apply_two_site_gate(Mps psi, const Mat4& u, std::size_t left_site,
                        const TruncationPolicy& policy) {
  policy.validate();
  if (left_site + 1 >= psi.size()) throw InvalidInput("left_site out of range");
  if (!is_unitary(u)) throw InvalidInput("two-site gate is not unitary");
  psi.apply_two_site(u, left_site, policy, Sweep::kRight);
  return psi;
}

Mps canonicalize(Mps psi, std::size_t center) {
  psi.canonicalize_inplace(center);
  return psi;
}

std::size_t max_bond(const Mps& psi) { return psi.max_bond(); }

std::vector<double> hamming_weight_norms(const Mps& psi, std::size_t max_weight) {
  const std::size_t levels = max_weight + 1;
  std::vector<MatX> env(levels, MatX::Zero(1, 1));
  env[0](0, 0) = 1.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const auto& t = psi.site(i);
    std::vector<MatX> next(levels);
    for (std::size_t c = 0; c < levels; ++c) {
      next[c] = t.m[0].adjoint() * env[c] * t.m[0];
      if (c > 0) next[c].noalias() += t.m[1].adjoint() * env[c - 1] * t.m[1];
    }
    env = std::move(next);
  }
  std::vector<double> out(levels);
  for (std::size_t c = 0; c < levels; ++c) out[c] = env[c](0, 0).real();
  return out;
}

cplx expectation_one_site(const Mps& psi, const Mat2& op, std::size_t site) {
  if (site >= psi.size()) throw InvalidInput("site out of range");
  MatX env = MatX::Ones(1, 1);
  for (std::size_t i = 0; i < psi.size(); ++i)
    env = i == site ? transfer_with_op(env, psi.site(i), psi.site(i), op)
                    : transfer(env, psi.site(i), psi.site(i));
  return env(0, 0);
}

cplx expectation_two_site(const Mps& psi, const Mat4& op, std::size_t left) {
  if (left + 1 >= psi.size()) throw InvalidInput("left site out of range");
  MatX env = MatX::Ones(1, 1);
  for (std::size_t i = 0; i < left; ++i) env = transfer(env, psi.site(i), psi.site(i));
  const auto& a = psi.site(left);
  const auto& b = psi.site(left + 1);
  MatX next = MatX::Zero(b.right_dim(), b.right_dim());
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2) {
      const MatX bra = (a.m[s1] * b.m[s2]).adjoint() * env;
      for (int t1 = 0; t1 < 2; ++t1)
        for (int t2 = 0; t2 < 2; ++t2) {
          const cplx c = op(2 * s1 + s2, 2 * t1 + t2);
          if (c != cplx{}) next.noalias() += c * (bra * a.m[t1] * b.m[t2]);
        }
    }
  env = std::move(next);
  for (std::size_t i = left + 2; i < psi.size(); ++i) env = transfer(env, psi.site(i), psi.site(i));
  return env(0, 0);
}

Mps random_mps(std::size_t n, std::size_t chi, std::uint64_t seed) {
  if (n == 0) throw InvalidInput("random_mps needs n >= 1");
  Rng rng(seed);
  auto bond = [&](std::size_t i) -> Index {
    // bond i sits between sites i-1 and i; bonds 0 and n are the boundaries
    const std::size_t cut = std::min(i, n - i);
    std::size_t exact = 1;
    for (std::size_t k = 0; k < cut && exact < chi; ++k) exact *= 2;
    return static_cast<Index>(std::min(chi, exact));
  };
  std::vector<SiteTensor> tensors(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& m : tensors[i].m) {
      m.resize(bond(i), bond(i + 1));
      for (Index r = 0; r < m.rows(); ++r)
        for (Index c = 0; c < m.cols(); ++c) m(r, c) = cplx{rng.normal(), rng.normal()};
    }
  }
  Mps psi(std::move(tensors));
  psi.canonicalize_inplace(0);
  psi.scale(1.0 / psi.norm());
  return psi;
}

}  // namespace aqct
