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

#include <random>

#include "gtest/gtest.h"

using namespace srep;

TEST(LinalgMod, RankOfHammingChecks) {
    ModMatrix h = {{1, 0, 1, 0, 1, 0, 1}, {0, 1, 1, 0, 0, 1, 1}, {0, 0, 0, 1, 1, 1, 1}};
    EXPECT_EQ(rank_mod(h, QuditDim(2)), 3u);
    ModMatrix dup = h;
    dup.push_back({1, 1, 0, 0, 1, 1, 0});
    EXPECT_EQ(rank_mod(dup, QuditDim(2)), 3u);
}

TEST(LinalgMod, NullspaceVectorsAreAnnihilated) {
    std::mt19937_64 rng(5);
    for (int D : {2, 3, 5}) {
        QuditDim dim(D);
        std::uniform_int_distribution<int> digit(0, D - 1);
        for (int trial = 0; trial < 20; trial++) {
            ModMatrix m(3, std::vector<int>(6));
            for (auto& row : m) {
                for (auto& v : row) {
                    v = digit(rng);
                }
            }
            ModMatrix ns = nullspace_mod(m, 6, dim);
            EXPECT_EQ(ns.size() + rank_mod(m, dim), 6u);
            for (const auto& v : ns) {
                for (int r : mat_vec_mod(m, v, dim)) {
                    EXPECT_EQ(r, 0);
                }
            }
        }
    }
}

TEST(LinalgMod, SolveFindsPreimageOrReportsNone) {
    QuditDim dim(3);
    ModMatrix m = {{1, 2, 0}, {0, 1, 1}};
    std::vector<int> x = {2, 1, 1};
    std::vector<int> rhs = mat_vec_mod(m, x, dim);
    auto sol = solve_mod(m, rhs, 3, dim);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(mat_vec_mod(m, *sol, dim), rhs);

    ModMatrix singular = {{1, 1}, {2, 2}};
    EXPECT_FALSE(solve_mod(singular, {1, 0}, 2, dim).has_value());
}

TEST(LinalgMod, RowReduceReturnsPivots) {
    QuditDim dim(2);
    ModMatrix m = {{0, 1, 1}, {0, 1, 1}, {1, 0, 1}};
    auto pivots = row_reduce(m, dim);
    EXPECT_EQ(pivots, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(m.size(), 2u);
}
