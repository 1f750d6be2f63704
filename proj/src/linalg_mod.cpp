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

#include "srep/linalg_mod.hpp"

#include <utility>

namespace srep {

std::vector<std::size_t> row_reduce(ModMatrix& m, QuditDim dim) {
    std::vector<std::size_t> pivots;
    if (m.empty()) {
        return pivots;
    }
    const std::size_t cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); c++) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) {
            piv++;
        }
        if (piv == m.size()) {
            continue;
        }
        std::swap(m[r], m[piv]);
        int inv = dim.inverse(m[r][c]);
        for (auto& v : m[r]) {
            v = dim.mod(static_cast<long long>(v) * inv);
        }
        for (std::size_t i = 0; i < m.size(); i++) {
            if (i == r || m[i][c] == 0) {
                continue;
            }
            int f = m[i][c];
            for (std::size_t j = 0; j < cols; j++) {
                m[i][j] = dim.mod(m[i][j] - static_cast<long long>(f) * m[r][j]);
            }
        }
        pivots.push_back(c);
        r++;
    }
    m.resize(r);
    return pivots;
}

std::size_t rank_mod(ModMatrix m, QuditDim dim) { return row_reduce(m, dim).size(); }

ModMatrix nullspace_mod(ModMatrix m, std::size_t cols, QuditDim dim) {
    auto pivots = row_reduce(m, dim);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) {
        is_pivot[p] = true;
    }
    ModMatrix basis;
    for (std::size_t free = 0; free < cols; free++) {
        if (is_pivot[free]) {
            continue;
        }
        std::vector<int> v(cols, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); r++) {
            v[pivots[r]] = dim.mod(-m[r][free]);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<int>> solve_mod(const ModMatrix& m, const std::vector<int>& rhs, std::size_t cols,
                                          QuditDim dim) {
    ModMatrix aug;
    aug.reserve(m.size());
    for (std::size_t i = 0; i < m.size(); i++) {
        auto row = m[i];
        row.push_back(dim.mod(rhs[i]));
        aug.push_back(std::move(row));
    }
    if (aug.empty()) {
        return std::vector<int>(cols, 0);
    }
    auto pivots = row_reduce(aug, dim);
    std::vector<int> x(cols, 0);
    for (std::size_t r = 0; r < pivots.size(); r++) {
        if (pivots[r] == cols) {
            return std::nullopt;
        }
        x[pivots[r]] = aug[r][cols];
    }
    return x;
}

std::vector<int> mat_vec_mod(const ModMatrix& m, const std::vector<int>& v, QuditDim dim) {
    std::vector<int> out(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); i++) {
        long long acc = 0;
        for (std::size_t j = 0; j < v.size(); j++) {
            acc += static_cast<long long>(m[i][j]) * v[j];
        }
        out[i] = dim.mod(acc);
    }
    return out;
}

}  // namespace srep
