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

#ifndef SREP_POLYNOMIAL_HPP
#define SREP_POLYNOMIAL_HPP

#include <initializer_list>
#include <span>
#include <vector>

namespace srep {

/// Real polynomial in u, coefficients in ascending powers.
class Polynomial {
   public:
    Polynomial() : c_{0.0} {}
    Polynomial(std::initializer_list<double> coeffs);
    explicit Polynomial(std::vector<double> coeffs);

    static Polynomial constant(double v) { return Polynomial({v}); }
    /// c0 + c1 u.
    static Polynomial affine(double c0, double c1) { return Polynomial({c0, c1}); }

    std::size_t degree() const { return c_.size() - 1; }
    std::span<const double> coefficients() const { return c_; }
    double operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0.0; }

    double operator()(double u) const;
    Polynomial derivative(unsigned order = 1) const;
    /// Value of the m-th derivative at u.
    double derivative_at(double u, unsigned order) const;
    /// Coefficients of p(at + t) in powers of t.
    std::vector<double> taylor_at(double at) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(double s);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

   private:
    void trim();
    std::vector<double> c_;
};

/// p^e by repeated squaring.
Polynomial pow(const Polynomial& p, unsigned e);

}  // namespace srep

#endif
