// Copyright 2026 The serial-repeater Authors
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

#ifndef SREP_LINALG_MOD_HPP
#define SREP_LINALG_MOD_HPP

#include <optional>
#include <vector>

#include "srep/qudit_algebra.hpp"

namespace srep {

/// Dense matrix over Z_D, row-major, one std::vector<int> per row.
using ModMatrix = std::vector<std::vector<int>>;

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(ModMatrix& m, QuditDim dim);

std::size_t rank_mod(ModMatrix m, QuditDim dim);

/// Basis of {v : m v = 0}. `cols` is needed when m has no rows.
ModMatrix nullspace_mod(ModMatrix m, std::size_t cols, QuditDim dim);

/// Some x with m x = rhs, or nullopt if inconsistent.
std::optional<std::vector<int>> solve_mod(const ModMatrix& m, const std::vector<int>& rhs, std::size_t cols,
                                          QuditDim dim);

/// m v over Z_D.
std::vector<int> mat_vec_mod(const ModMatrix& m, const std::vector<int>& v, QuditDim dim);

}  // namespace srep

#endif
