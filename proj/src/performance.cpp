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

#include "srep/performance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace srep {

namespace {

constexpr int kScanPoints = 10000;
constexpr double kBoundaryTol = 1e-12;

double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    double r = 1.0;
    for (int i = 1; i <= k; i++) {
        r = r * (n - k + i) / i;
    }
    return std::round(r);
}

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; i++) {
        r *= i;
    }
    return r;
}

/// Scan points in (0, 1): a uniform grid plus a log-spaced tail toward u = 1 so
/// that very small optimal hop losses are still bracketed.
std::vector<double> scan_points() {
    std::vector<double> pts;
    pts.reserve(kScanPoints + 200);
    for (int i = 1; i < kScanPoints; i++) {
        pts.push_back(static_cast<double>(i) / kScanPoints);
    }
    for (int i = 0; i < 200; i++) {
        double eps = std::pow(10.0, -4.0 - 8.0 * (i + 1) / 200.0);
        pts.push_back(1.0 - eps);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

/// ln S / ln u; the exponent -R ln S / ln u makes P_tot largest where this is
/// smallest.
double loss_ratio(const PerformancePolynomial& S, double u) { return std::log(S(u)) / std::log(u); }

template <typename F>
double bisect(F f, double lo, double hi, double f_lo) {
    for (int it = 0; it < 200 && hi - lo > 0.0; it++) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        double fm = f(mid);
        if (fm == 0.0) {
            return mid;
        }
        if ((fm < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

}  // namespace

std::pair<double, double> PerformancePolynomial::value_and_slope(double u) const {
    if (classes.empty()) {
        return {s(u), s.derivative_at(u, 1)};
    }
    // Same grouped sum as assemble_S, carried out on (value, derivative) pairs.
    struct Dual {
        double v = 0.0;
        double d = 0.0;
    };
    auto mul = [](Dual x, Dual y) { return Dual{x.v * y.v, x.v * y.d + x.d * y.v}; };
    int lmax = 0;
    int qmax = 0;
    for (auto [l, q] : budget) {
        lmax = std::max(lmax, l);
        qmax = std::max(qmax, q);
    }
    std::vector<Dual> dp((lmax + 1) * (qmax + 1));
    auto at = [&](std::vector<Dual>& v, int l, int q) -> Dual& { return v[l * (qmax + 1) + q]; };
    at(dp, 0, 0) = {1.0, 0.0};
    for (const auto& cls : classes) {
        const int m = cls.multiplicity;
        Dual a{cls.probs.a(u), cls.probs.a.derivative_at(u, 1)};
        Dual b{cls.probs.b(u), cls.probs.b.derivative_at(u, 1)};
        Dual c{cls.probs.c(u), cls.probs.c.derivative_at(u, 1)};
        std::vector<Dual> pa(m + 1), pb(lmax + 1), pc(qmax + 1);
        pa[0] = pb[0] = pc[0] = {1.0, 0.0};
        for (int i = 1; i <= m; i++) {
            pa[i] = mul(pa[i - 1], a);
        }
        for (int i = 1; i <= lmax; i++) {
            pb[i] = mul(pb[i - 1], b);
        }
        for (int i = 1; i <= qmax; i++) {
            pc[i] = mul(pc[i - 1], c);
        }
        std::vector<Dual> next(dp.size());
        for (int l0 = 0; l0 <= lmax; l0++) {
            for (int q0 = 0; q0 <= qmax; q0++) {
                Dual cur = at(dp, l0, q0);
                if (cur.v == 0.0 && cur.d == 0.0) {
                    continue;
                }
                for (int nb = 0; nb <= std::min(m, lmax - l0); nb++) {
                    for (int nc = 0; nc <= std::min(m - nb, qmax - q0); nc++) {
                        double w = binomial(m, nb) * binomial(m - nb, nc);
                        Dual t = mul(cur, mul(pa[m - nb - nc], mul(pb[nb], pc[nc])));
                        Dual& dst = at(next, l0 + nb, q0 + nc);
                        dst.v += w * t.v;
                        dst.d += w * t.d;
                    }
                }
            }
        }
        dp = std::move(next);
    }
    double v = 0.0;
    double d = 0.0;
    for (auto [l, q] : budget) {
        v += at(dp, l, q).v;
        d += at(dp, l, q).d;
    }
    return {v, d};
}

PerformancePolynomial assemble_S(const NodeCircuit& circuit, const ErrorParams& params) {
    params.validate();
    const StabilizerCode& code = circuit.code;
    CorrectabilityBudget budget = correctability_budget(code);
    int lmax = 0;
    int qmax = 0;
    for (auto [l, q] : budget.pairs) {
        lmax = std::max(lmax, l);
        qmax = std::max(qmax, q);
    }

    std::vector<PhotonClassTerm> factored;
    std::map<std::pair<int, int>, int> classes;
    for (std::size_t j = 0; j < circuit.photons(); j++) {
        classes[{circuit.n_gamma[j], circuit.n_delta[j]}]++;
    }

    // dp[l][q]: photons so far split with l unlocated and q located outcomes.
    std::vector<std::vector<Polynomial>> dp(lmax + 1, std::vector<Polynomial>(qmax + 1));
    std::vector<std::vector<bool>> live(lmax + 1, std::vector<bool>(qmax + 1, false));
    dp[0][0] = Polynomial{1.0};
    live[0][0] = true;

    for (const auto& [counts, m] : classes) {
        QuditOutcomeProbabilities pr =
            per_qudit_probabilities(params, PhotonGateCounts{counts.first, counts.second}, code.dim);
        factored.push_back({m, pr});
        std::vector<Polynomial> pa(m + 1), pb(lmax + 1), pc(qmax + 1);
        pa[0] = pb[0] = pc[0] = Polynomial{1.0};
        for (int i = 1; i <= m; i++) {
            pa[i] = pa[i - 1] * pr.a;
        }
        for (int i = 1; i <= lmax; i++) {
            pb[i] = pb[i - 1] * pr.b;
        }
        for (int i = 1; i <= qmax; i++) {
            pc[i] = pc[i - 1] * pr.c;
        }

        std::vector<std::vector<Polynomial>> next(lmax + 1, std::vector<Polynomial>(qmax + 1));
        std::vector<std::vector<bool>> next_live(lmax + 1, std::vector<bool>(qmax + 1, false));
        for (int l0 = 0; l0 <= lmax; l0++) {
            for (int q0 = 0; q0 <= qmax; q0++) {
                if (!live[l0][q0]) {
                    continue;
                }
                for (int b = 0; b <= std::min(m, lmax - l0); b++) {
                    for (int c = 0; c <= std::min(m - b, qmax - q0); c++) {
                        double weight = binomial(m, b) * binomial(m - b, c);
                        next[l0 + b][q0 + c] += dp[l0][q0] * (pa[m - b - c] * pb[b] * pc[c]) * weight;
                        next_live[l0 + b][q0 + c] = true;
                    }
                }
            }
        }
        dp = std::move(next);
        live = std::move(next_live);
    }

    PerformancePolynomial out;
    for (auto [l, q] : budget.pairs) {
        if (l <= lmax && q <= qmax && live[l][q]) {
            out.s += dp[l][q];
        }
    }
    out.classes = std::move(factored);
    out.budget = budget.pairs;
    out.code_name = code.name;
    out.params = params;
    out.n = code.n;
    out.k = code.k;
    return out;
}

const char* threshold_status_name(ThresholdStatus s) {
    switch (s) {
        case ThresholdStatus::kBelow:
            return "below";
        case ThresholdStatus::kBoundary:
            return "boundary";
        case ThresholdStatus::kAbove:
            return "above";
    }
    return "?";
}

ThresholdResult threshold_check(const PerformancePolynomial& S) {
    Polynomial diag = S.s - Polynomial{0.0, 1.0};
    auto g = [&](double u) { return S(u) - u; };
    ThresholdResult res;
    bool identically_zero = true;
    for (double c : diag.coefficients()) {
        identically_zero &= std::abs(c) <= 1e-15;
    }
    if (identically_zero) {
        res.status = ThresholdStatus::kBoundary;
        res.witness_u = 0.5;
        res.max_margin = 0.0;
        return res;
    }

    std::vector<double> pts = scan_points();
    std::size_t best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); i++) {
        double v = g(pts[i]);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    // Golden-section refinement of the maximum between the neighbours.
    double lo = best > 0 ? pts[best - 1] : 0.0;
    double hi = best + 1 < pts.size() ? pts[best + 1] : 1.0;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    double f1 = g(x1);
    double f2 = g(x2);
    for (int it = 0; it < 100 && hi - lo > 1e-15; it++) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = g(x1);
        }
    }
    double refined = 0.5 * (lo + hi);
    double refined_val = g(refined);
    if (refined_val > best_val) {
        best_val = refined_val;
    } else {
        refined = pts[best];
    }
    res.witness_u = refined;
    res.max_margin = best_val;
    // A boundary needs tangency, S(u) = u and S'(u) = 1; touching zero at the
    // u = 0 end (S(0) = 0) does not count.
    double slope = S.value_and_slope(res.witness_u).second - 1.0;
    if (best_val > kBoundaryTol) {
        res.status = ThresholdStatus::kBelow;
    } else if (best_val >= -kBoundaryTol && std::abs(slope) <= 1e-6) {
        res.status = ThresholdStatus::kBoundary;
    } else {
        res.status = ThresholdStatus::kAbove;
    }
    return res;
}

double spacing_residual(const PerformancePolynomial& S, double u) {
    auto [sv, ds] = S.value_and_slope(u);
    return sv * std::log(sv) - u * ds * std::log(u);
}

const char* spacing_status_name(SpacingStatus s) {
    switch (s) {
        case SpacingStatus::kInterior:
            return "interior";
        case SpacingStatus::kUnbounded:
            return "unbounded";
        case SpacingStatus::kAboveThreshold:
            return "above_threshold";
    }
    return "?";
}

SpacingResult optimize_spacing(const PerformancePolynomial& S) {
    SpacingResult res;
    double s1 = S(1.0);
    if (s1 >= 1.0) {
        res.status = SpacingStatus::kUnbounded;
        res.u_star = 1.0;
        return res;
    }
    auto residual = [&](double u) { return spacing_residual(S, u); };

    std::vector<double> pts = scan_points();
    double prev_u = 0.0;
    double prev_r = std::numeric_limits<double>::quiet_NaN();
    for (double u : pts) {
        if (!(S(u) > 0.0)) {
            prev_r = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        double r = residual(u);
        if (r == 0.0) {
            res.candidates.push_back(u);
        } else if (!std::isnan(prev_r) && (r < 0.0) != (prev_r < 0.0)) {
            res.candidates.push_back(bisect(residual, prev_u, u, prev_r));
        }
        prev_u = u;
        prev_r = r;
    }
    if (res.candidates.empty()) {
        res.status = SpacingStatus::kAboveThreshold;
        res.u_star = std::numeric_limits<double>::quiet_NaN();
        return res;
    }
    double best_u = res.candidates.front();
    double best_ratio = loss_ratio(S, best_u);
    for (double u : res.candidates) {
        double ratio = loss_ratio(S, u);
        if (ratio < best_ratio) {
            best_ratio = ratio;
            best_u = u;
        }
    }
    res.status = SpacingStatus::kInterior;
    res.u_star = best_u;
    res.residual = residual(best_u);
    return res;
}

OptimizationResult range_at_success(const PerformancePolynomial& S, double u_star, double p_tot_target) {
    if (!(p_tot_target > 0.0 && p_tot_target < 1.0)) {
        throw std::invalid_argument("p_tot target must lie in (0, 1)");
    }
    OptimizationResult r;
    r.u_star = u_star;
    r.p_tot = p_tot_target;
    double ln_p = std::abs(std::log(p_tot_target));
    double sv = S(u_star);
    if (sv >= 1.0 || u_star >= 1.0) {
        r.infinite_range = true;
        r.R = r.eta = r.node_count = r.effective_attenuation = std::numeric_limits<double>::infinity();
        r.node_count_ceil = 0;
        return r;
    }
    double ln_u = std::abs(std::log(u_star));
    double ln_s = std::abs(std::log(sv));
    r.effective_attenuation = ln_u / ln_s;
    r.R = ln_p * r.effective_attenuation;
    r.eta = 1.0 / ln_u;
    r.node_count = ln_p / ln_s;
    r.node_count_ceil = static_cast<long long>(std::ceil(r.node_count - 1e-9));
    return r;
}

namespace {

OptimizationResult finish(const PerformancePolynomial& S, const SpacingResult& sp, double p_tot_target) {
    OptimizationResult r;
    if (sp.status == SpacingStatus::kAboveThreshold) {
        r.p_tot = p_tot_target;
        r.u_star = r.eta = r.R = r.node_count = r.effective_attenuation = std::numeric_limits<double>::quiet_NaN();
    } else {
        r = range_at_success(S, sp.u_star, p_tot_target);
    }
    r.above_threshold = sp.status == SpacingStatus::kAboveThreshold ||
                        (sp.status == SpacingStatus::kInterior && threshold_check(S).status != ThresholdStatus::kBelow);
    return r;
}

}  // namespace

OptimizationResult optimize(const PerformancePolynomial& S, double p_tot_target) {
    return finish(S, optimize_spacing(S), p_tot_target);
}

double bare_range(double p_tot_target) { return std::abs(std::log(p_tot_target)); }

ApproxResult approx_range_and_density(const PerformancePolynomial& S, double p_tot_target) {
    ApproxResult r;
    double s0 = S.s(1.0);
    double s1 = S.s.derivative_at(1.0, 1);
    double s2 = S.s.derivative_at(1.0, 2);
    r.radicand = s1 * s1 - s0 * (s2 + s1);
    if (s0 >= 1.0) {
        r.status = ApproxStatus::kInfinite;
        r.R = r.eta = std::numeric_limits<double>::infinity();
        return r;
    }
    if (!(s0 > 0.0) || !(r.radicand > 0.0)) {
        r.status = ApproxStatus::kInvalid;
        r.R = r.eta = std::numeric_limits<double>::quiet_NaN();
        return r;
    }
    double ln_s = std::abs(std::log(s0));
    double ln_p = std::abs(std::log(p_tot_target));
    r.status = ApproxStatus::kValid;
    r.R = std::sqrt(2.0) * s0 * ln_p / std::sqrt(ln_s * r.radicand);
    r.eta = std::sqrt(r.radicand / (2.0 * ln_s)) / s0;
    return r;
}

std::vector<double> log_derivatives_at_one(const Polynomial& s, int max_order) {
    std::vector<double> taylor = s.taylor_at(1.0);
    taylor.resize(std::max<std::size_t>(taylor.size(), max_order + 1), 0.0);
    if (!(taylor[0] > 0.0)) {
        throw std::domain_error("S(1) must be positive for the log expansion");
    }
    // Taylor coefficients of ln S(1 + t) from those of S(1 + t).
    std::vector<double> ell(max_order + 1, 0.0);
    ell[0] = std::log(taylor[0]);
    for (int m = 1; m <= max_order; m++) {
        double acc = taylor[m];
        for (int k = 1; k < m; k++) {
            acc -= static_cast<double>(k) / m * ell[k] * taylor[m - k];
        }
        ell[m] = acc / taylor[0];
    }
    std::vector<double> out(max_order + 1);
    for (int m = 0; m <= max_order; m++) {
        out[m] = ell[m] * factorial(m);
    }
    return out;
}

ExpansionSeries expansion_coefficients(const PerformancePolynomial& S, int order) {
    if (order < 2) {
        throw std::invalid_argument("expansion order must be at least 2");
    }
    if (static_cast<std::size_t>(order) > S.s.degree()) {
        throw std::invalid_argument("expansion order exceeds the degree of S");
    }
    if (S.s(1.0) == 0.0) {
        throw std::domain_error("S(1) = 0");
    }
    std::vector<double> L = log_derivatives_at_one(S.s, order);
    ExpansionSeries out;
    out.ln_s1 = L[0];
    out.coefficients.assign(order + 1, 0.0);
    for (int j = 2; j <= order; j++) {
        double acc = ((j % 2 == 0) ? 1.0 : -1.0) * (j - 1) * L[j];
        for (int m = 0; m <= j - 2; m++) {
            acc += binomial(j, m) * factorial(j - m - 2) * ((m % 2 == 0) ? 1.0 : -1.0) * L[m + 1];
        }
        out.coefficients[j] = acc / factorial(j);
    }
    return out;
}

std::optional<double> ExpansionSeries::solve_epsilon() const {
    auto f = [&](double eps) {
        double acc = 0.0;
        double p = 1.0;
        for (std::size_t j = 0; j < coefficients.size(); j++) {
            acc += coefficients[j] * p;
            p *= eps;
        }
        return acc - ln_s1;
    };
    if (ln_s1 == 0.0) {
        return std::nullopt;
    }
    const int steps = 20000;
    double prev_e = 0.0;
    double prev_f = f(0.0);
    for (int i = 1; i <= steps; i++) {
        double e = 0.5 * std::pow(static_cast<double>(i) / steps, 2.0);
        double fe = f(e);
        if (fe == 0.0) {
            return e;
        }
        if ((fe < 0.0) != (prev_f < 0.0)) {
            return bisect(f, prev_e, e, prev_f);
        }
        prev_e = e;
        prev_f = fe;
    }
    return std::nullopt;
}

PerformanceRecord evaluate_performance(const NodeCircuit& circuit, const ErrorParams& params, double p_tot_target) {
    PerformanceRecord rec;
    rec.S = assemble_S(circuit, params);
    rec.spacing = optimize_spacing(rec.S);
    rec.result = finish(rec.S, rec.spacing, p_tot_target);
    rec.approx = approx_range_and_density(rec.S, p_tot_target);
    return rec;
}

namespace {

nlohmann::json number_or_null(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    return nullptr;
}

const char* approx_status_name(ApproxStatus s) {
    switch (s) {
        case ApproxStatus::kValid:
            return "valid";
        case ApproxStatus::kInfinite:
            return "infinite";
        case ApproxStatus::kInvalid:
            return "invalid";
    }
    return "?";
}

}  // namespace

nlohmann::json to_json(const OptimizationResult& r) {
    return {{"u_star", number_or_null(r.u_star)},
            {"eta", number_or_null(r.eta)},
            {"R", number_or_null(r.R)},
            {"p_tot", r.p_tot},
            {"node_count", number_or_null(r.node_count)},
            {"node_count_ceil", r.node_count_ceil},
            {"effective_attenuation", number_or_null(r.effective_attenuation)},
            {"infinite_range", r.infinite_range},
            {"above_threshold", r.above_threshold}};
}

nlohmann::json to_json(const ApproxResult& r) {
    return {{"status", approx_status_name(r.status)},
            {"R", number_or_null(r.R)},
            {"eta", number_or_null(r.eta)},
            {"radicand", r.radicand}};
}

nlohmann::json to_json(const PerformanceRecord& r) {
    std::vector<double> coeffs(r.S.s.coefficients().begin(), r.S.s.coefficients().end());
    nlohmann::json j = to_json(r.result);
    j["code"] = r.S.code_name;
    j["params"] = to_json(r.S.params);
    j["spacing_status"] = spacing_status_name(r.spacing.status);
    j["residual"] = r.spacing.residual;
    j["approx"] = to_json(r.approx);
    j["S_coefficients"] = coeffs;
    return j;
}

}  // namespace srep
