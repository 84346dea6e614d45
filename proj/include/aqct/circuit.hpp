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

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace aqct {

/// Primitive gate of an exported circuit.
///
///   rx q θ | ry q θ | rz q θ   exp(-i θ P / 2) on qubit q
///   cx c t                     CNOT with control c and target t
struct Gate {
  std::string name;
  std::vector<std::size_t> qubits;
  std::vector<double> angles;

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct Circuit {
  std::size_t n = 0;
  std::vector<Gate> gates;

  void rx(std::size_t q, double a) { gates.push_back({"rx", {q}, {a}}); }
  void ry(std::size_t q, double a) { gates.push_back({"ry", {q}, {a}}); }
  void rz(std::size_t q, double a) { gates.push_back({"rz", {q}, {a}}); }
  void cx(std::size_t c, std::size_t t) { gates.push_back({"cx", {c, t}, {}}); }

  void append(const Circuit& other);
  std::size_t cnot_count() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// CNOT depth: each CNOT starts after the latest CNOT on either of its
/// qubits; single-qubit gates take no time. Shared by ansatz and Trotter
/// circuits.
std::size_t cnot_depth(const Circuit& circuit);

/// Text gate list, one gate per line:
///
///   # comment
///   qubits <n>
///   <name> <qubit>... <angle>...
///
/// Angles are printed with 17 significant digits so parsing restores them
/// exactly.
void write_circuit(std::ostream& out, const Circuit& circuit);
std::string circuit_to_string(const Circuit& circuit);

/// Throws InvalidInput with the offending line number on malformed input.
Circuit parse_circuit(std::istream& in);
Circuit parse_circuit_string(const std::string& text);

}  // namespace aqct
