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

#include "aqct/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "aqct/error.hpp"

namespace aqct {

namespace {

struct GateArity {
  std::size_t qubits;
  std::size_t angles;
};

bool arity_of(const std::string& name, GateArity& out) {
  if (name == "rx" || name == "ry" || name == "rz") {
    out = {1, 1};
    return true;
  }
  if (name == "cx") {
    out = {2, 0};
    return true;
  }
  return false;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw InvalidInput("circuit line " + std::to_string(line) + ": " + what);
}

}  // namespace

void Circuit::append(const Circuit& other) {
  n = std::max(n, other.n);
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

std::size_t Circuit::cnot_count() const {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.name == "cx"; }));
}

std::size_t cnot_depth(const Circuit& circuit) {
  std::vector<std::size_t> line(circuit.n, 0);
  std::size_t depth = 0;
  for (const auto& gate : circuit.gates) {
    if (gate.name != "cx") continue;
    const std::size_t a = gate.qubits.at(0), b = gate.qubits.at(1);
    if (a >= line.size() || b >= line.size()) line.resize(std::max(a, b) + 1, 0);
    const std::size_t level = std::max(line[a], line[b]) + 1;
    line[a] = line[b] = level;
    depth = std::max(depth, level);
  }
  return depth;
}

void write_circuit(std::ostream& out, const Circuit& circuit) {
  out << "# aqctensor circuit v1\n";
  out << "qubits " << circuit.n << '\n';
  const auto old_precision = out.precision();
  out << std::setprecision(17);
  for (const auto& gate : circuit.gates) {
    out << gate.name;
    for (auto q : gate.qubits) out << ' ' << q;
    for (auto a : gate.angles) out << ' ' << a;
    out << '\n';
  }
  out.precision(old_precision);
}

std::string circuit_to_string(const Circuit& circuit) {
  std::ostringstream out;
  write_circuit(out, circuit);
  return out.str();
}

Circuit parse_circuit(std::istream& in) {
  Circuit circuit;
  bool have_header = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string name;
    if (!(tokens >> name)) continue;
    if (name == "qubits") {
      if (have_header) parse_error(line_no, "duplicate qubits line");
      if (!(tokens >> circuit.n)) parse_error(line_no, "expected qubit count");
      have_header = true;
      continue;
    }
    if (!have_header) parse_error(line_no, "gate before 'qubits' line");
    GateArity arity{};
    if (!arity_of(name, arity)) parse_error(line_no, "unknown gate '" + name + "'");
    Gate gate{name, {}, {}};
    for (std::size_t i = 0; i < arity.qubits; ++i) {
      std::size_t q = 0;
      if (!(tokens >> q)) parse_error(line_no, "expected qubit index");
      if (q >= circuit.n) parse_error(line_no, "qubit index out of range");
      gate.qubits.push_back(q);
    }
    if (gate.qubits.size() == 2 && gate.qubits[0] == gate.qubits[1])
      parse_error(line_no, "cx needs two distinct qubits");
    for (std::size_t i = 0; i < arity.angles; ++i) {
      std::string token;
      if (!(tokens >> token)) parse_error(line_no, "expected angle");
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc{} || ptr != token.data() + token.size())
        parse_error(line_no, "bad angle '" + token + "'");
      gate.angles.push_back(value);
    }
    std::string extra;
    if (tokens >> extra) parse_error(line_no, "trailing token '" + extra + "'");
    circuit.gates.push_back(std::move(gate));
  }
  if (!have_header) throw InvalidInput("circuit: missing 'qubits' line");
  return circuit;
}

Circuit parse_circuit_string(const std::string& text) {
  std::istringstream in(text);
  return parse_circuit(in);
}

}  // namespace aqct
