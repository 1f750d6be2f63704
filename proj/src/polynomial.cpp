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

#include "srep/polynomial.hpp"

#include <algorithm>

namespace srep {

Polynomial::Polynomial(std::initializer_list<double> coeffs) : c_(coeffs) {
    if (c_.empty()) {
        c_.push_back(0.0);
    }
    trim();
}

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) {
        c_.push_back(0.0);
    }
    trim();
}

void Polynomial::trim() {
    while (c_.size() > 1 && c_.back() == 0.0) {
        c_.pop_back();
    }
}

double Polynomial::operator()(double u) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * u + *it;
    }
    return acc;
}

Polynomial Polynomial::derivative(unsigned order) const {
    std::vector<double> c = c_;
    for (unsigned k = 0; k < order; k++) {
        if (c.size() <= 1) {
            return Polynomial{0.0};
        }
        std::vector<double> d(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); i++) {
            d[i - 1] = c[i] * static_cast<double>(i);
        }
        c = std::move(d);
    }
    return Polynomial(std::move(c));
}

double Polynomial::derivative_at(double u, unsigned order) const { return derivative(order)(u); }

std::vector<double> Polynomial::taylor_at(double at) const {
    // Repeated synthetic division by (u - at).
    std::vector<double> work = c_;
    std::vector<double> out(c_.size(), 0.0);
    for (std::size_t k = 0; k < c_.size(); k++) {
        double carry = 0.0;
        for (std::size_t i = work.size(); i-- > k;) {
            carry = carry * at + work[i];
            work[i] = carry;
        }
        out[k] = work[k];
    }
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) {
        c_.resize(o.c_.size(), 0.0);
    }
    for (std::size_t i = 0; i < o.c_.size(); i++) {
        c_[i] += o.c_[i];
    }
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) {
        c_.resize(o.c_.size(), 0.0);
    }
    for (std::size_t i = 0; i < o.c_.size(); i++) {
        c_[i] -= o.c_[i];
    }
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(double s) {
    for (auto& v : c_) {
        v *= s;
    }
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<double> c(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); i++) {
        if (a.c_[i] == 0.0) {
            continue;
        }
        for (std::size_t j = 0; j < b.c_.size(); j++) {
            c[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return Polynomial(std::move(c));
}

Polynomial pow(const Polynomial& p, unsigned e) {
    Polynomial result{1.0};
    Polynomial base = p;
    while (e) {
        if (e & 1u) {
            result = result * base;
        }
        e >>= 1;
        if (e) {
            base = base * base;
        }
    }
    return result;
}

}  // namespace srep
