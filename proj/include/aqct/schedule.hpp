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
#include <string_view>
#include <vector>

#include "aqct/linalg.hpp"

namespace aqct {

/// Role of a column in the fused second-order Trotter layout.
enum class ColumnTag { kInitial, kEvenHalf, kOddFull, kEvenFull, kField };

std::string_view to_string(ColumnTag tag);

/// One gate acting on `site` (2×2 u) or on (site, site+1) (4×4 u).
struct LocalGate {
  std::size_t site = 0;
  MatX u;

  std::size_t width() const { return u.rows() == 4 ? 2 : 1; }
};

/// Gates on pairwise disjoint sites, listed by increasing site.
struct GateColumn {
  ColumnTag tag = ColumnTag::kField;
  std::vector<LocalGate> gates;
};

/// Ordered columns of a circuit; columns are applied first to last.
struct GateSchedule {
  std::size_t n = 0;
  std::vector<GateColumn> columns;

  std::size_t gate_count() const;
  /// Number of columns that contain at least one two-site gate.
  std::size_t two_site_column_count() const;
};

/// Reversed column order with every gate replaced by its conjugate transpose.
GateSchedule adjoint(const GateSchedule& schedule);

/// Throws InvalidInput if a column overlaps itself or leaves the chain.
void validate(const GateSchedule& schedule);

}  // namespace aqct
