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

#include <sstream>
#include <utility>

namespace srep {

bool is_prime(int value) {
    if (value < 2) {
        return false;
    }
    for (int f = 2; f * f <= value; f++) {
        if (value % f == 0) {
            return false;
        }
    }
    return true;
}

QuditDim::QuditDim(int d) : d_(d) {
    if (!is_prime(d)) {
        throw std::invalid_argument("qudit dimension must be prime, got " + std::to_string(d));
    }
}

int QuditDim::mod(long long v) const {
    long long r = v % d_;
    return static_cast<int>(r < 0 ? r + d_ : r);
}

int QuditDim::inverse(int v) const {
    int a = mod(v);
    if (a == 0) {
        throw std::domain_error("zero has no inverse mod D");
    }
    for (int c = 1; c < d_; c++) {
        if ((a * c) % d_ == 1) {
            return c;
        }
    }
    throw std::logic_error("unreachable: D is prime");
}

PauliOperator::PauliOperator(QuditDim dim, std::size_t n) : dim_(dim), x_(n, 0), z_(n, 0) {
    if (n == 0) {
        throw ShapeError("Pauli operator needs at least one qudit");
    }
}

PauliOperator::PauliOperator(QuditDim dim, std::vector<int> x_exp, std::vector<int> z_exp, int phase_half)
    : dim_(dim), x_(std::move(x_exp)), z_(std::move(z_exp)) {
    if (x_.size() != z_.size()) {
        throw ShapeError("x and z exponent vectors differ in length");
    }
    if (x_.empty()) {
        throw ShapeError("Pauli operator needs at least one qudit");
    }
    for (auto& v : x_) {
        v = dim_.mod(v);
    }
    for (auto& v : z_) {
        v = dim_.mod(v);
    }
    int two_d = 2 * dim_.value();
    phase_half_ = ((phase_half % two_d) + two_d) % two_d;
}

PauliOperator PauliOperator::x_on(QuditDim dim, std::size_t n, std::size_t site, int power) {
    if (site >= n) {
        throw ShapeError("site out of range");
    }
    PauliOperator p(dim, n);
    p.x_[site] = dim.mod(power);
    return p;
}

PauliOperator PauliOperator::z_on(QuditDim dim, std::size_t n, std::size_t site, int power) {
    if (site >= n) {
        throw ShapeError("site out of range");
    }
    PauliOperator p(dim, n);
    p.z_[site] = dim.mod(power);
    return p;
}

std::size_t PauliOperator::weight() const {
    std::size_t w = 0;
    for (std::size_t j = 0; j < x_.size(); j++) {
        w += (x_[j] != 0 || z_[j] != 0);
    }
    return w;
}

std::vector<std::size_t> PauliOperator::support() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < x_.size(); j++) {
        if (x_[j] != 0 || z_[j] != 0) {
            out.push_back(j);
        }
    }
    return out;
}

bool PauliOperator::is_x_type() const {
    for (int v : z_) {
        if (v != 0) {
            return false;
        }
    }
    return true;
}

bool PauliOperator::is_z_type() const {
    for (int v : x_) {
        if (v != 0) {
            return false;
        }
    }
    return true;
}

bool PauliOperator::equal_up_to_phase(const PauliOperator& other) const {
    return dim_ == other.dim_ && x_ == other.x_ && z_ == other.z_;
}

bool operator==(const PauliOperator& a, const PauliOperator& b) {
    return a.equal_up_to_phase(b) && a.phase_half_ == b.phase_half_;
}

std::string PauliOperator::str() const {
    std::ostringstream out;
    if (phase_half_ != 0) {
        out << "w^(" << phase_half_ << "/2)*";
    }
    for (std::size_t j = 0; j < x_.size(); j++) {
        if (j) {
            out << ' ';
        }
        if (x_[j] == 0 && z_[j] == 0) {
            out << 'I';
            continue;
        }
        if (x_[j]) {
            out << 'X' << x_[j];
        }
        if (z_[j]) {
            out << 'Z' << z_[j];
        }
    }
    return out.str();
}

namespace {

void check_same_shape(const PauliOperator& p, const PauliOperator& q) {
    if (!(p.dim() == q.dim())) {
        throw ShapeError("dimension mismatch: D=" + std::to_string(p.dim().value()) +
                         " vs D=" + std::to_string(q.dim().value()));
    }
    if (p.size() != q.size()) {
        throw ShapeError("length mismatch: " + std::to_string(p.size()) + " vs " + std::to_string(q.size()));
    }
}

}  // namespace

PauliOperator multiply(const PauliOperator& p, const PauliOperator& q) {
    check_same_shape(p, q);
    const QuditDim dim = p.dim();
    std::size_t n = p.size();
    std::vector<int> x(n), z(n);
    long long cross = 0;
    for (std::size_t j = 0; j < n; j++) {
        x[j] = p.x_[j] + q.x_[j];
        z[j] = p.z_[j] + q.z_[j];
        cross += static_cast<long long>(p.z_[j]) * q.x_[j];
    }
    // omega^cross is 2*cross in half-units.
    int phase = static_cast<int>((p.phase_half_ + q.phase_half_ + 2 * (cross % dim.value())) % (2 * dim.value()));
    return PauliOperator(dim, std::move(x), std::move(z), phase);
}

int commutation_phase(const PauliOperator& p, const PauliOperator& q) {
    check_same_shape(p, q);
    long long s = 0;
    for (std::size_t j = 0; j < p.size(); j++) {
        s += static_cast<long long>(p.x(j)) * q.z(j) - static_cast<long long>(p.z(j)) * q.x(j);
    }
    return p.dim().mod(s);
}

PauliOperator apply_r_conjugation(const PauliOperator& p, std::size_t site) {
    if (site >= p.size()) {
        throw ShapeError("site " + std::to_string(site) + " out of range for " + std::to_string(p.size()) +
                         " qudits");
    }
    const QuditDim dim = p.dim();
    PauliOperator out = p;
    int a = p.x_[site];
    int b = p.z_[site];
    // R X^a Z^b R^-1 = Z^a X^-b = omega^(-ab) X^-b Z^a.
    out.x_[site] = dim.mod(-b);
    out.z_[site] = a;
    int two_d = 2 * dim.value();
    out.phase_half_ = ((p.phase_half_ - 2 * a * b) % two_d + two_d) % two_d;
    return out;
}

PauliOperator conjugate_by_cphase(const PauliOperator& p, std::size_t a, std::size_t b, int power) {
    if (a >= p.size() || b >= p.size() || a == b) {
        throw ShapeError("CPHASE needs two distinct in-range sites");
    }
    const QuditDim dim = p.dim();
    int q = dim.mod(power);
    PauliOperator out = p;
    int xa = p.x_[a];
    int xb = p.x_[b];
    out.z_[a] = dim.mod(p.z_[a] + static_cast<long long>(q) * xb);
    out.z_[b] = dim.mod(p.z_[b] + static_cast<long long>(q) * xa);
    // Reordering X^xa X^xb past the new Z-parts leaves omega^(q xa xb).
    int two_d = 2 * dim.value();
    out.phase_half_ = static_cast<int>((p.phase_half_ + 2LL * q * xa * xb) % two_d);
    return out;
}

PauliOperator cphase_power_action(int power, const PauliOperator& target_op) {
    if (target_op.size() != 1) {
        throw ShapeError("cphase_power_action takes a single-site operator");
    }
    PauliOperator two(target_op.dim(), {target_op.x(0), 0}, {target_op.z(0), 0}, target_op.phase_half());
    return conjugate_by_cphase(two, 0, 1, power);
}

}  // namespace srep
