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

#ifndef SREP_QUDIT_ALGEBRA_HPP
#define SREP_QUDIT_ALGEBRA_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace srep {

/// Thrown when two operators (or an operator and a site index) disagree on
/// qudit count or dimension.
class ShapeError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

bool is_prime(int value);

/// Dimension D of a qudit. Only prime D is accepted, so Z_D is a field.
class QuditDim {
   public:
    QuditDim() : d_(2) {}
    explicit QuditDim(int d);

    int value() const { return d_; }
    /// Reduces any integer into [0, D).
    int mod(long long v) const;
    /// Multiplicative inverse of a nonzero residue.
    int inverse(int v) const;

    friend bool operator==(QuditDim a, QuditDim b) { return a.d_ == b.d_; }

   private:
    int d_;
};

/// Generalized Pauli operator omega^(phase/2) X^x Z^z on n qudits, stored in
/// symplectic form. The phase is kept in half-units modulo 2D.
class PauliOperator {
   public:
    PauliOperator(QuditDim dim, std::size_t n);
    PauliOperator(QuditDim dim, std::vector<int> x_exp, std::vector<int> z_exp, int phase_half = 0);

    static PauliOperator identity(QuditDim dim, std::size_t n) { return PauliOperator(dim, n); }
    /// X^power on a single site of an n-qudit register.
    static PauliOperator x_on(QuditDim dim, std::size_t n, std::size_t site, int power = 1);
    static PauliOperator z_on(QuditDim dim, std::size_t n, std::size_t site, int power = 1);

    QuditDim dim() const { return dim_; }
    std::size_t size() const { return x_.size(); }
    const std::vector<int>& x_exp() const { return x_; }
    const std::vector<int>& z_exp() const { return z_; }
    int x(std::size_t site) const { return x_[site]; }
    int z(std::size_t site) const { return z_[site]; }
    int phase_half() const { return phase_half_; }

    std::size_t weight() const;
    std::vector<std::size_t> support() const;
    bool is_identity_up_to_phase() const { return weight() == 0; }
    bool is_x_type() const;
    bool is_z_type() const;

    /// Same exponents, phase ignored.
    bool equal_up_to_phase(const PauliOperator& other) const;

    /// Compact text form such as "X1Z2 I X1" with an omega prefix.
    std::string str() const;

    friend bool operator==(const PauliOperator& a, const PauliOperator& b);

   private:
    friend PauliOperator multiply(const PauliOperator& p, const PauliOperator& q);
    friend PauliOperator apply_r_conjugation(const PauliOperator& p, std::size_t site);
    friend PauliOperator conjugate_by_cphase(const PauliOperator& p, std::size_t a, std::size_t b, int power);

    QuditDim dim_;
    std::vector<int> x_;
    std::vector<int> z_;
    int phase_half_ = 0;
};

/// Operator product p*q. Uses Z X = omega X Z, so moving q's X-part left past
/// p's Z-part contributes omega^(sum p.z * q.x).
PauliOperator multiply(const PauliOperator& p, const PauliOperator& q);

/// s in Z_D with q*p = omega^s p*q, s = sum_j (p.x[j] q.z[j] - p.z[j] q.x[j]).
/// Zero exactly when p and q commute.
int commutation_phase(const PauliOperator& p, const PauliOperator& q);

/// R p R^-1 with R = sum_{jl} omega^{jl} |j><l| acting on `site`.
/// (a, b) at the site maps to (-b, a).
PauliOperator apply_r_conjugation(const PauliOperator& p, std::size_t site);

/// CPHASE^power p CPHASE^-power for the two-qudit gate on sites a and b.
/// X^s on one leg picks up Z^(power*s) on the other; Z-parts pass through.
PauliOperator conjugate_by_cphase(const PauliOperator& p, std::size_t a, std::size_t b, int power);

/// Single-leg form of the CPHASE^power rule on a two-qudit register where site
/// 0 holds the leg carrying `target_op` and site 1 the partner leg. Returns the
/// two-site image.
PauliOperator cphase_power_action(int power, const PauliOperator& target_op);

}  // namespace srep

#endif
