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

#include "aqct/hamiltonian.hpp"

#include <cmath>
#include <string>

#include "aqct/error.hpp"
#include "aqct/random.hpp"

namespace aqct {

namespace {

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

// exp(i a P) for a Pauli string P with P² = 1.
Mat4 pauli_exponential(const Mat4& p, double a) {
  return std::cos(a) * Mat4::Identity() + kI * std::sin(a) * p;
}

}  // namespace

void XYZHamiltonian::validate() const {
  if (n < 1) throw InvalidInput("Hamiltonian needs at least one site");
  const std::size_t bonds = n - 1;
  if (alpha.size() != bonds || beta.size() != bonds || delta.size() != bonds)
    throw InvalidInput("coupling lists must have length n-1 = " + std::to_string(bonds));
  if (h.size() != n) throw InvalidInput("field list must have length n = " + std::to_string(n));
  if (!all_finite(alpha) || !all_finite(beta) || !all_finite(delta) || !all_finite(h))
    throw InvalidInput("Hamiltonian coefficients must be finite");
}

XYZHamiltonian XYZHamiltonian::uniform(std::size_t n, double alpha, double beta, double delta,
                                       double field) {
  if (n < 1) throw InvalidInput("Hamiltonian needs at least one site");
  XYZHamiltonian ham;
  ham.n = n;
  ham.alpha.assign(n - 1, alpha);
  ham.beta.assign(n - 1, beta);
  ham.delta.assign(n - 1, delta);
  ham.h.assign(n, field);
  return ham;
}

bool operator==(const XYZHamiltonian& a, const XYZHamiltonian& b) {
  return a.n == b.n && a.alpha == b.alpha && a.beta == b.beta && a.delta == b.delta &&
         a.h == b.h && a.seed == b.seed;
}

XYZHamiltonian random_xyz(std::size_t n, double lo, double hi, std::uint64_t seed) {
  if (!(lo <= hi)) throw InvalidInput("random_xyz needs lo <= hi");
  if (n < 1) throw InvalidInput("Hamiltonian needs at least one site");
  Rng rng(seed);
  XYZHamiltonian ham;
  ham.n = n;
  ham.seed = seed;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    ham.alpha.push_back(rng.uniform(lo, hi));
    ham.beta.push_back(rng.uniform(lo, hi));
    ham.delta.push_back(rng.uniform(lo, hi));
  }
  ham.h.assign(n, 0.0);
  return ham;
}

XYZHamiltonian hamiltonian_preset(const std::string& name, std::size_t n, std::uint64_t seed) {
  if (name == "xxx") return XYZHamiltonian::uniform(n, 0.75, 0.75, 0.75);
  if (name == "xxz") return XYZHamiltonian::uniform(n, 0.75, 0.75, 1.5);
  if (name == "random-xyz") return random_xyz(n, 0.375, 1.125, seed);
  throw InvalidInput("unknown Hamiltonian preset '" + name + "'");
}

void to_json(nlohmann::json& j, const XYZHamiltonian& ham) {
  j = nlohmann::json{{"n", ham.n},        {"alpha", ham.alpha}, {"beta", ham.beta},
                     {"delta", ham.delta}, {"h", ham.h}};
  j["seed"] = ham.seed ? nlohmann::json(*ham.seed) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, XYZHamiltonian& ham) {
  j.at("n").get_to(ham.n);
  j.at("alpha").get_to(ham.alpha);
  j.at("beta").get_to(ham.beta);
  j.at("delta").get_to(ham.delta);
  if (j.contains("h"))
    j.at("h").get_to(ham.h);
  else
    ham.h.assign(ham.n, 0.0);
  if (j.contains("seed") && !j.at("seed").is_null())
    ham.seed = j.at("seed").get<std::uint64_t>();
  else
    ham.seed.reset();
  ham.validate();
}

Mat4 bond_operator(double alpha, double beta, double delta) {
  const Mat2 sx = pauli_x() / 2.0, sy = pauli_y() / 2.0, sz = pauli_z() / 2.0;
  return alpha * kron(sx, sx) + beta * kron(sy, sy) + delta * kron(sz, sz);
}

Mat4 two_site_unitary(double alpha, double beta, double delta, double dt) {
  // XX, YY and ZZ commute, so the exponential factorizes.
  const Mat2 x = pauli_x(), y = pauli_y(), z = pauli_z();
  return pauli_exponential(kron(x, x), alpha * dt / 4) *
         pauli_exponential(kron(y, y), beta * dt / 4) *
         pauli_exponential(kron(z, z), delta * dt / 4);
}

Mat2 field_rotation(double h, double dt, bool half) {
  const double angle = h * dt * (half ? 0.5 : 1.0);
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::polar(1.0, -angle / 2);
  m(1, 1) = std::polar(1.0, angle / 2);
  return m;
}

GateSchedule build_trotter_schedule(const XYZHamiltonian& ham, double dt, std::size_t steps) {
  ham.validate();
  if (steps < 1) throw InvalidInput("Trotter schedule needs at least one step");
  if (!std::isfinite(dt)) throw InvalidInput("time step must be finite");
  const std::size_t n = ham.n;

  auto bond_column = [&](ColumnTag tag, std::size_t first, double step) {
    GateColumn column{tag, {}};
    for (std::size_t i = first; i + 1 < n; i += 2)
      column.gates.push_back({i, two_site_unitary(ham.alpha[i], ham.beta[i], ham.delta[i], step)});
    return column;
  };
  auto field_column = [&]() {
    GateColumn column{ColumnTag::kField, {}};
    for (std::size_t i = 0; i < n; ++i) column.gates.push_back({i, field_rotation(ham.h[i], dt, true)});
    return column;
  };

  GateSchedule schedule;
  schedule.n = n;
  schedule.columns.push_back(bond_column(ColumnTag::kEvenHalf, 0, dt / 2));
  for (std::size_t step = 0; step < steps; ++step) {
    schedule.columns.push_back(field_column());
    schedule.columns.push_back(bond_column(ColumnTag::kOddFull, 1, dt));
    schedule.columns.push_back(field_column());
    if (step + 1 < steps)
      schedule.columns.push_back(bond_column(ColumnTag::kEvenFull, 0, dt));
    else
      schedule.columns.push_back(bond_column(ColumnTag::kEvenHalf, 0, dt / 2));
  }
  return schedule;
}

void apply_column_inplace(Mps& psi, const GateColumn& column, const TruncationPolicy& policy) {
  if (column.gates.empty()) return;
  bool two_site = false;
  for (const auto& gate : column.gates) {
    if (gate.width() == 1)
      psi.apply_one_site(gate.u, gate.site);
    else
      two_site = true;
  }
  if (!two_site) return;

  const std::size_t first = column.gates.front().site;
  const std::size_t last = column.gates.back().site;
  const bool descending = psi.center() && *psi.center() > (first + last + 1) / 2;
  if (!descending) {
    for (const auto& gate : column.gates)
      if (gate.width() == 2) psi.apply_two_site(gate.u, gate.site, policy, Sweep::kRight);
  } else {
    for (auto it = column.gates.rbegin(); it != column.gates.rend(); ++it)
      if (it->width() == 2) psi.apply_two_site(it->u, it->site, policy, Sweep::kLeft);
  }
}

void apply_schedule_inplace(Mps& psi, const GateSchedule& schedule, const TruncationPolicy& policy) {
  if (psi.size() != schedule.n)
    throw InvalidInput("schedule acts on " + std::to_string(schedule.n) + " qubits, state has " +
                       std::to_string(psi.size()));
  for (const auto& column : schedule.columns) apply_column_inplace(psi, column, policy);
}

Mps apply_schedule(Mps psi, const GateSchedule& schedule, const TruncationPolicy& policy) {
  policy.validate();
  apply_schedule_inplace(psi, schedule, policy);
  return psi;
}

Mps tebd_evolve(Mps psi0, const XYZHamiltonian& ham, double dt, std::size_t steps,
                const TruncationPolicy& policy) {
  ham.validate();
  if (psi0.size() != ham.n) throw InvalidInput("state and Hamiltonian sizes differ");
  policy.validate();
  if (steps == 0) return psi0;
  const GateSchedule schedule = build_trotter_schedule(ham, dt, steps);
  apply_schedule_inplace(psi0, schedule, policy);
  if (!psi0.center()) psi0.canonicalize_inplace(0);
  const double norm = psi0.norm();
  if (norm > 0) psi0.scale(1.0 / norm);
  return psi0;
}

double energy(const Mps& psi, const XYZHamiltonian& ham) {
  ham.validate();
  if (psi.size() != ham.n) throw InvalidInput("state and Hamiltonian sizes differ");
  const double norm2 = inner_product(psi, psi).real();
  double e = 0.0;
  for (std::size_t i = 0; i + 1 < ham.n; ++i)
    e -= expectation_two_site(psi, bond_operator(ham.alpha[i], ham.beta[i], ham.delta[i]), i).real();
  const Mat2 sz = pauli_z() / 2.0;
  for (std::size_t i = 0; i < ham.n; ++i)
    if (ham.h[i] != 0.0) e += ham.h[i] * expectation_one_site(psi, sz, i).real();
  return e / norm2;
}

double total_sz(const Mps& psi) {
  const Mat2 sz = pauli_z() / 2.0;
  double total = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) total += expectation_one_site(psi, sz, i).real();
  return total / inner_product(psi, psi).real();
}

}  // namespace aqct
