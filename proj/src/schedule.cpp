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

#include "aqct/schedule.hpp"

#include <algorithm>
#include <string>

#include "aqct/error.hpp"

namespace aqct {

std::string_view to_string(ColumnTag tag) {
  switch (tag) {
    case ColumnTag::kInitial:
      return "initial";
    case ColumnTag::kEvenHalf:
      return "even-half";
    case ColumnTag::kOddFull:
      return "odd-full";
    case ColumnTag::kEvenFull:
      return "even-full";
    case ColumnTag::kField:
      return "field";
  }
  return "unknown";
}

std::size_t GateSchedule::gate_count() const {
  std::size_t count = 0;
  for (const auto& column : columns) count += column.gates.size();
  return count;
}

std::size_t GateSchedule::two_site_column_count() const {
  return static_cast<std::size_t>(std::count_if(columns.begin(), columns.end(), [](const auto& c) {
    return std::any_of(c.gates.begin(), c.gates.end(),
                       [](const LocalGate& g) { return g.width() == 2; });
  }));
}

GateSchedule adjoint(const GateSchedule& schedule) {
  GateSchedule out;
  out.n = schedule.n;
  out.columns.reserve(schedule.columns.size());
  for (auto it = schedule.columns.rbegin(); it != schedule.columns.rend(); ++it) {
    GateColumn column{it->tag, {}};
    column.gates.reserve(it->gates.size());
    for (const auto& gate : it->gates) column.gates.push_back({gate.site, gate.u.adjoint()});
    out.columns.push_back(std::move(column));
  }
  return out;
}

void validate(const GateSchedule& schedule) {
  for (std::size_t c = 0; c < schedule.columns.size(); ++c) {
    std::size_t next_free = 0;
    for (const auto& gate : schedule.columns[c].gates) {
      if (gate.u.rows() != gate.u.cols() || (gate.u.rows() != 2 && gate.u.rows() != 4))
        throw InvalidInput("column " + std::to_string(c) + ": gate must be 2x2 or 4x4");
      if (gate.site < next_free)
        throw InvalidInput("column " + std::to_string(c) + ": overlapping or unsorted gates");
      next_free = gate.site + gate.width();
      if (next_free > schedule.n)
        throw InvalidInput("column " + std::to_string(c) + ": gate leaves the chain");
    }
  }
}

}  // namespace aqct
