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

#include "srep/qudit_algebra.hpp"

#include <complex>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

using namespace srep;

namespace {

using cd = std::complex<double>;

// Dense D^n x D^n matrices, row-major, site 0 is the most significant digit.
struct Dense {
    std::size_t dim = 0;
    std::vector<cd> a;

    explicit Dense(std::size_t n) : dim(n), a(n * n, 0.0) {}
    cd& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
    cd at(std::size_t r, std::size_t c) const { return a[r * dim + c]; }
};

Dense mul(const Dense& x, const Dense& y) {
    Dense out(x.dim);
    for (std::size_t i = 0; i < x.dim; i++) {
        for (std::size_t k = 0; k < x.dim; k++) {
            if (x.at(i, k) == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < x.dim; j++) {
                out.at(i, j) += x.at(i, k) * y.at(k, j);
            }
        }
    }
    return out;
}

bool close(const Dense& x, const Dense& y, cd scale = 1.0) {
    for (std::size_t i = 0; i < x.a.size(); i++) {
        if (std::abs(x.a[i] - scale * y.a[i]) > 1e-9) {
            return false;
        }
    }
    return true;
}

std::vector<int> digits(std::size_t index, int D, std::size_t n) {
    std::vector<int> d(n);
    for (std::size_t s = n; s-- > 0;) {
        d[s] = static_cast<int>(index % D);
        index /= D;
    }
    return d;
}

std::size_t index_of(const std::vector<int>& d, int D) {
    std::size_t idx = 0;
    for (int v : d) {
        idx = idx * D + v;
    }
    return idx;
}

cd omega(int D, double power) { return std::polar(1.0, 2.0 * std::numbers::pi * power / D); }

// omega^(phase/2) prod_s X^x_s Z^z_s with X|j> = |j+1>, Z|j> = omega^j |j>.
Dense dense_of(const PauliOperator& p) {
    int D = p.dim().value();
    std::size_t n = p.size();
    std::size_t N = 1;
    for (std::size_t s = 0; s < n; s++) {
        N *= D;
    }
    Dense m(N);
    for (std::size_t col = 0; col < N; col++) {
        std::vector<int> in = digits(col, D, n);
        std::vector<int> out = in;
        cd amp = omega(D, p.phase_half() / 2.0);
        for (std::size_t s = 0; s < n; s++) {
            amp *= omega(D, static_cast<double>(p.z(s) * in[s]));
            out[s] = (in[s] + p.x(s)) % D;
        }
        m.at(index_of(out, D), col) = amp;
    }
    return m;
}

Dense r_on(int D, std::size_t n, std::size_t site, bool inverse) {
    std::size_t N = 1;
    for (std::size_t s = 0; s < n; s++) {
        N *= D;
    }
    Dense m(N);
    for (std::size_t row = 0; row < N; row++) {
        for (std::size_t col = 0; col < N; col++) {
            auto dr = digits(row, D, n);
            auto dc = digits(col, D, n);
            bool rest_equal = true;
            for (std::size_t s = 0; s < n; s++) {
                rest_equal &= s == site || dr[s] == dc[s];
            }
            if (rest_equal) {
                double ph = static_cast<double>(dr[site] * dc[site]);
                m.at(row, col) = omega(D, inverse ? -ph : ph) / std::sqrt(static_cast<double>(D));
            }
        }
    }
    return m;
}

Dense cphase(int D, std::size_t n, std::size_t a, std::size_t b, int power) {
    std::size_t N = 1;
    for (std::size_t s = 0; s < n; s++) {
        N *= D;
    }
    Dense m(N);
    for (std::size_t i = 0; i < N; i++) {
        auto d = digits(i, D, n);
        m.at(i, i) = omega(D, static_cast<double>(power * d[a] * d[b]));
    }
    return m;
}

PauliOperator random_pauli(std::mt19937_64& rng, QuditDim dim, std::size_t n) {
    std::uniform_int_distribution<int> digit(0, dim.value() - 1);
    std::uniform_int_distribution<int> phase(0, 2 * dim.value() - 1);
    std::vector<int> x(n), z(n);
    for (std::size_t s = 0; s < n; s++) {
        x[s] = digit(rng);
        z[s] = digit(rng);
    }
    return PauliOperator(dim, x, z, phase(rng));
}

class DenseOracle : public ::testing::TestWithParam<std::pair<int, int>> {};

}  // namespace

TEST(QuditDim, RejectsNonPrime) {
    EXPECT_THROW(QuditDim(4), std::invalid_argument);
    EXPECT_THROW(QuditDim(1), std::invalid_argument);
    EXPECT_NO_THROW(QuditDim(5));
}

TEST(QuditDim, ModAndInverse) {
    QuditDim d(5);
    EXPECT_EQ(d.mod(-1), 4);
    EXPECT_EQ(d.mod(12), 2);
    for (int v = 1; v < 5; v++) {
        EXPECT_EQ(d.mod(static_cast<long long>(v) * d.inverse(v)), 1);
    }
}

TEST(PauliOperator, ShapeMismatchThrows) {
    QuditDim d(3);
    PauliOperator a = PauliOperator::x_on(d, 2, 0);
    PauliOperator b = PauliOperator::x_on(d, 3, 0);
    EXPECT_THROW(multiply(a, b), ShapeError);
    PauliOperator c = PauliOperator::x_on(QuditDim(2), 2, 0);
    EXPECT_THROW(multiply(a, c), ShapeError);
}

TEST(PauliOperator, QutritXZCommutationPhase) {
    QuditDim d(3);
    PauliOperator x = PauliOperator::x_on(d, 1, 0);
    PauliOperator z = PauliOperator::z_on(d, 1, 0);
    // Z X = omega X Z.
    int s = commutation_phase(x, z);
    EXPECT_EQ(s, 1);
    EXPECT_TRUE(close(mul(dense_of(z), dense_of(x)), mul(dense_of(x), dense_of(z)), omega(3, s)));
}

TEST(PauliOperator, WeightAndSupport) {
    QuditDim d(2);
    PauliOperator p(d, {1, 0, 1, 0}, {0, 0, 1, 1});
    EXPECT_EQ(p.weight(), 3u);
    EXPECT_EQ(p.support(), (std::vector<std::size_t>{0, 2, 3}));
    EXPECT_FALSE(p.is_x_type());
    EXPECT_FALSE(p.is_z_type());
}

TEST_P(DenseOracle, MultiplyMatchesMatrixProduct) {
    auto [D, n] = GetParam();
    QuditDim dim(D);
    std::mt19937_64 rng(1000 + D * 10 + n);
    for (int trial = 0; trial < 40; trial++) {
        PauliOperator p = random_pauli(rng, dim, n);
        PauliOperator q = random_pauli(rng, dim, n);
        EXPECT_TRUE(close(mul(dense_of(p), dense_of(q)), dense_of(multiply(p, q))))
            << p.str() << " * " << q.str();
    }
}

TEST_P(DenseOracle, CommutationPhaseMatchesMatrices) {
    auto [D, n] = GetParam();
    QuditDim dim(D);
    std::mt19937_64 rng(2000 + D * 10 + n);
    for (int trial = 0; trial < 40; trial++) {
        PauliOperator p = random_pauli(rng, dim, n);
        PauliOperator q = random_pauli(rng, dim, n);
        int s = commutation_phase(p, q);
        EXPECT_TRUE(close(mul(dense_of(q), dense_of(p)), mul(dense_of(p), dense_of(q)), omega(D, s)));
    }
}

TEST_P(DenseOracle, RConjugationMatchesMatrices) {
    auto [D, n] = GetParam();
    QuditDim dim(D);
    std::mt19937_64 rng(3000 + D * 10 + n);
    for (int trial = 0; trial < 30; trial++) {
        PauliOperator p = random_pauli(rng, dim, n);
        std::size_t site = trial % n;
        Dense expect = mul(mul(r_on(D, n, site, false), dense_of(p)), r_on(D, n, site, true));
        EXPECT_TRUE(close(expect, dense_of(apply_r_conjugation(p, site)))) << p.str();
    }
}

TEST_P(DenseOracle, CphaseConjugationMatchesMatrices) {
    auto [D, n] = GetParam();
    if (n < 2) {
        GTEST_SKIP();
    }
    QuditDim dim(D);
    std::mt19937_64 rng(4000 + D * 10 + n);
    for (int trial = 0; trial < 30; trial++) {
        PauliOperator p = random_pauli(rng, dim, n);
        int power = 1 + trial % (D - 1 > 0 ? D - 1 : 1);
        std::size_t a = trial % n;
        std::size_t b = (a + 1) % n;
        Dense expect = mul(mul(cphase(D, n, a, b, power), dense_of(p)), cphase(D, n, a, b, -power));
        EXPECT_TRUE(close(expect, dense_of(conjugate_by_cphase(p, a, b, power)))) << p.str();
    }
}

INSTANTIATE_TEST_SUITE_P(SmallRegisters, DenseOracle,
                         ::testing::Values(std::pair{2, 1}, std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 1},
                                           std::pair{3, 2}, std::pair{3, 3}));

TEST(PauliProperties, CommutationAntisymmetricAndBilinear) {
    std::mt19937_64 rng(77);
    for (int D : {2, 3, 5}) {
        QuditDim dim(D);
        for (int trial = 0; trial < 200; trial++) {
            PauliOperator p = random_pauli(rng, dim, 4);
            PauliOperator q = random_pauli(rng, dim, 4);
            PauliOperator r = random_pauli(rng, dim, 4);
            EXPECT_EQ(dim.mod(commutation_phase(p, q) + commutation_phase(q, p)), 0);
            EXPECT_EQ(commutation_phase(multiply(p, q), r),
                      dim.mod(commutation_phase(p, r) + commutation_phase(q, r)));
        }
    }
}

TEST(PauliProperties, ConjugationPreservesCommutation) {
    std::mt19937_64 rng(78);
    for (int D : {2, 3, 5}) {
        QuditDim dim(D);
        for (int trial = 0; trial < 200; trial++) {
            PauliOperator p = random_pauli(rng, dim, 3);
            PauliOperator q = random_pauli(rng, dim, 3);
            int power = 1 + trial % (D - 1);
            EXPECT_EQ(commutation_phase(conjugate_by_cphase(p, 0, 2, power), conjugate_by_cphase(q, 0, 2, power)),
                      commutation_phase(p, q));
            EXPECT_EQ(commutation_phase(apply_r_conjugation(p, 1), apply_r_conjugation(q, 1)),
                      commutation_phase(p, q));
        }
    }
}

TEST(PauliProperties, RHasOrderFour) {
    std::mt19937_64 rng(79);
    for (int D : {2, 3, 5}) {
        QuditDim dim(D);
        for (int trial = 0; trial < 50; trial++) {
            PauliOperator p = random_pauli(rng, dim, 2);
            PauliOperator q = p;
            for (int i = 0; i < 4; i++) {
                q = apply_r_conjugation(q, 0);
            }
            EXPECT_EQ(q, p);
        }
    }
}

TEST(PauliProperties, CphaseInverseUndoes) {
    std::mt19937_64 rng(80);
    for (int D : {2, 3, 5}) {
        QuditDim dim(D);
        for (int trial = 0; trial < 50; trial++) {
            PauliOperator p = random_pauli(rng, dim, 2);
            int power = 1 + trial % (D - 1);
            EXPECT_EQ(conjugate_by_cphase(conjugate_by_cphase(p, 0, 1, power), 0, 1, D - power), p);
        }
    }
}

TEST(Cphase, XOnOneLegKicksZOntoOther) {
    QuditDim d(3);
    PauliOperator img = cphase_power_action(2, PauliOperator::x_on(d, 1, 0));
    EXPECT_EQ(img.x(0), 1);
    EXPECT_EQ(img.z(1), 2);
    PauliOperator zimg = cphase_power_action(2, PauliOperator::z_on(d, 1, 0));
    EXPECT_EQ(zimg.z(0), 1);
    EXPECT_EQ(zimg.weight(), 1u);
}
