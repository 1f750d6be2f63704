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

#ifndef SREP_ERROR_MODEL_HPP
#define SREP_ERROR_MODEL_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "srep/polynomial.hpp"
#include "srep/qudit_algebra.hpp"

namespace srep {

/// Component error probabilities of one repeater node. Transmission survival u
/// is not stored here; every per-qudit quantity is a polynomial in u.
struct ErrorParams {
    double p_c = 0.0;   ///< no photon created
    double p_g = 0.0;   ///< photon lost after a two-qudit gate
    double p_x = 0.0;   ///< gate bit flip
    double p_y = 0.0;   ///< gate bit + phase flip
    double p_z = 0.0;   ///< gate phase flip
    double p_m = 0.0;   ///< detector null result
    double p_f = 0.0;   ///< detector readout flip
    double p_dc = 0.0;  ///< dark count
    double alpha = 1.0; ///< fiber loss rate per unit length

    /// Throws std::invalid_argument naming the first violated bound.
    void validate() const;

    friend bool operator==(const ErrorParams&, const ErrorParams&) = default;
};

nlohmann::json to_json(const ErrorParams& p);
/// Flat key/value document; missing keys default to zero (alpha to 1).
ErrorParams error_params_from_json(const nlohmann::json& doc);

/// Gate counts a photon sees: outgoing side (preparation + outgoing
/// entanglement) and incoming side (incoming entanglement + QND readout).
struct PhotonGateCounts {
    int n_gamma = 0;
    int n_delta = 1;
};

/// P_A (no registered error), P_B (correctable unlocated error) and P_C
/// (detectable loss registering as a null result) for one photon, each affine
/// in u.
struct QuditOutcomeProbabilities {
    Polynomial a;
    Polynomial b;
    Polynomial c;
};

QuditOutcomeProbabilities per_qudit_probabilities(const ErrorParams& params, PhotonGateCounts counts, QuditDim dim);

/// The six printed terms of P_B, kept separate so each can be checked alone.
namespace pb_terms {
Polynomial detected_without_null(const ErrorParams& p, PhotonGateCounts c);
Polynomial minus_errorless(const ErrorParams& p, PhotonGateCounts c);
Polynomial minus_benign_dark_count(const ErrorParams& p, PhotonGateCounts c, QuditDim dim);
Polynomial dark_count_without_photon(const ErrorParams& p, PhotonGateCounts c);
Polynomial dark_count_after_final_gate_loss(const ErrorParams& p, PhotonGateCounts c);
Polynomial dark_count_after_null(const ErrorParams& p, PhotonGateCounts c);
}  // namespace pb_terms

/// Switching-contrast bound on CPHASE fidelity, C^2 / (1 + C)^2.
double cavity_fidelity(double cooperativity);

enum class PresetKind {
    /// Knobs (P_L, P_CGM): p_x = p_y = p_z = P_L/3, p_f = 2 P_L/3,
    /// p_c = p_g = p_m = P_CGM, no dark counts.
    kFig3,
    /// One joint rate r: p_c = p_g = p_m = r, p_x = p_y = p_z = r/3,
    /// p_f = 2r/3, no dark counts.
    kFig4,
};

struct ScenarioPreset {
    PresetKind kind;
    std::string name;
    std::size_t arity;
};

/// "fig3" or "fig4"; throws std::out_of_range otherwise.
ScenarioPreset preset_by_name(const std::string& name);
ErrorParams resolve_preset(const ScenarioPreset& preset, const std::vector<double>& knobs);

}  // namespace srep

#endif
