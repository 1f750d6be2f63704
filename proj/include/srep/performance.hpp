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

#ifndef SREP_PERFORMANCE_HPP
#define SREP_PERFORMANCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "srep/error_model.hpp"
#include "srep/node_circuit.hpp"
#include "srep/polynomial.hpp"

namespace srep {

/// Photons sharing the same gate counts, with their per-qudit outcome
/// probabilities.
struct PhotonClassTerm {
    int multiplicity = 0;
    QuditOutcomeProbabilities probs;
};

/// Probability S(u) that one node hands on a correctable state, as an exact
/// polynomial in the per-hop survival u.
///
/// The monomial coefficients of large codes alternate in sign and reach 1e6,
/// so pointwise values come from the factored sum when it is available.
struct PerformancePolynomial {
    Polynomial s;
    std::string code_name;
    ErrorParams params;
    int n = 0;
    int k = 0;
    std::vector<PhotonClassTerm> classes;
    std::vector<std::pair<int, int>> budget;

    double operator()(double u) const { return value_and_slope(u).first; }
    /// S(u) and S'(u).
    std::pair<double, double> value_and_slope(double u) const;
};

/// Sum over every admissible split of the photons into error-free, unlocated
/// and located outcomes. Photons with identical gate counts are grouped so the
/// split is counted with multinomial weights; the result is exact.
PerformancePolynomial assemble_S(const NodeCircuit& circuit, const ErrorParams& params);

enum class ThresholdStatus { kBelow, kBoundary, kAbove };

const char* threshold_status_name(ThresholdStatus s);

struct ThresholdResult {
    ThresholdStatus status = ThresholdStatus::kAbove;
    /// Point maximizing S(u) - u over (0, 1).
    double witness_u = 0.0;
    double max_margin = 0.0;
};

ThresholdResult threshold_check(const PerformancePolynomial& S);

/// S ln S - u S' ln u; zero at the optimal spacing.
double spacing_residual(const PerformancePolynomial& S, double u);

enum class SpacingStatus {
    kInterior,
    /// S(1) = 1: the range grows without bound as u -> 1.
    kUnbounded,
    /// No stationary point of ln S / ln u in (0, 1).
    kAboveThreshold,
};

const char* spacing_status_name(SpacingStatus s);

struct SpacingResult {
    SpacingStatus status = SpacingStatus::kAboveThreshold;
    double u_star = 0.0;
    double residual = 0.0;
    /// Every root of the residual found on the scan, in increasing u.
    std::vector<double> candidates;
};

SpacingResult optimize_spacing(const PerformancePolynomial& S);

struct OptimizationResult {
    double u_star = 0.0;
    double eta = 0.0;
    double R = 0.0;
    double p_tot = 0.0;
    double node_count = 0.0;
    long long node_count_ceil = 0;
    double effective_attenuation = 0.0;
    bool infinite_range = false;
    /// S(u) <= u on all of (0, 1): the repeater never beats a bare photon.
    /// R and eta still describe the best spacing.
    bool above_threshold = false;
};

/// Range and density at a fixed spacing for the end-to-end target p_tot.
OptimizationResult range_at_success(const PerformancePolynomial& S, double u_star, double p_tot_target);

/// optimize_spacing, range_at_success and the threshold flag.
OptimizationResult optimize(const PerformancePolynomial& S, double p_tot_target);

/// Range of a single unrepeated photon, P_tot = exp(-R).
double bare_range(double p_tot_target);

enum class ApproxStatus { kValid, kInfinite, kInvalid };

struct ApproxResult {
    ApproxStatus status = ApproxStatus::kInvalid;
    double R = 0.0;
    double eta = 0.0;
    double radicand = 0.0;
};

/// Lowest-order closed forms for R and eta built from S(1), S'(1), S''(1).
ApproxResult approx_range_and_density(const PerformancePolynomial& S, double p_tot_target);

/// Coefficients c_j (j = 0..order, c_0 = c_1 = 0) of
///   ln S(1) = sum_j c_j eps^j
/// in terms of derivatives of ln S at u = 1.
struct ExpansionSeries {
    double ln_s1 = 0.0;
    std::vector<double> coefficients;

    /// Smallest positive eps solving the truncated series, if any in (0, 1/2].
    std::optional<double> solve_epsilon() const;
};

ExpansionSeries expansion_coefficients(const PerformancePolynomial& S, int order);

/// Derivatives of ln S at u = 1, orders 0..max_order.
std::vector<double> log_derivatives_at_one(const Polynomial& s, int max_order);

struct PerformanceRecord {
    PerformancePolynomial S;
    SpacingResult spacing;
    OptimizationResult result;
    ApproxResult approx;
};

PerformanceRecord evaluate_performance(const NodeCircuit& circuit, const ErrorParams& params, double p_tot_target);

nlohmann::json to_json(const OptimizationResult& r);
nlohmann::json to_json(const ApproxResult& r);
nlohmann::json to_json(const PerformanceRecord& r);

}  // namespace srep

#endif
