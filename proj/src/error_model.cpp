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

#include "srep/error_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace srep {

namespace {

constexpr double kSumSlack = 1e-12;

void check_probability(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

void check_counts(PhotonGateCounts c) {
    if (c.n_gamma < 0) {
        throw std::invalid_argument("n_gamma must be non-negative");
    }
    if (c.n_delta < 1) {
        throw std::invalid_argument("n_delta must be at least 1 (exponent n_delta - 1 would be negative)");
    }
}

double ipow(double base, int e) { return std::pow(base, static_cast<double>(e)); }

}  // namespace

void ErrorParams::validate() const {
    check_probability(p_c, "p_c");
    check_probability(p_g, "p_g");
    check_probability(p_x, "p_x");
    check_probability(p_y, "p_y");
    check_probability(p_z, "p_z");
    check_probability(p_m, "p_m");
    check_probability(p_f, "p_f");
    check_probability(p_dc, "p_dc");
    if (p_g + p_x + p_y + p_z > 1.0 + kSumSlack) {
        throw std::invalid_argument("p_g + p_x + p_y + p_z must not exceed 1");
    }
    if (p_m + p_f > 1.0 + kSumSlack) {
        throw std::invalid_argument("p_m + p_f must not exceed 1");
    }
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("alpha must be positive");
    }
}

nlohmann::json to_json(const ErrorParams& p) {
    return {{"p_c", p.p_c}, {"p_g", p.p_g}, {"p_x", p.p_x},   {"p_y", p.p_y},    {"p_z", p.p_z},
            {"p_m", p.p_m}, {"p_f", p.p_f}, {"p_dc", p.p_dc}, {"alpha", p.alpha}};
}

ErrorParams error_params_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw std::invalid_argument("error parameters must be a JSON object");
    }
    static const char* kKeys[] = {"p_c", "p_g", "p_x", "p_y", "p_z", "p_m", "p_f", "p_dc", "alpha"};
    for (const auto& item : doc.items()) {
        bool known = false;
        for (const char* k : kKeys) {
            known |= item.key() == k;
        }
        if (!known) {
            throw std::invalid_argument("unknown error parameter '" + item.key() + "'");
        }
    }
    ErrorParams p;
    p.p_c = doc.value("p_c", 0.0);
    p.p_g = doc.value("p_g", 0.0);
    p.p_x = doc.value("p_x", 0.0);
    p.p_y = doc.value("p_y", 0.0);
    p.p_z = doc.value("p_z", 0.0);
    p.p_m = doc.value("p_m", 0.0);
    p.p_f = doc.value("p_f", 0.0);
    p.p_dc = doc.value("p_dc", 0.0);
    p.alpha = doc.value("alpha", 1.0);
    p.validate();
    return p;
}

// Shorthand used below, with G = n_gamma and H = n_delta:
//   created   = 1 - p_c
//   kept      = 1 - p_g               (gate, no loss)
//   no_flip   = 1 - p_g - p_x - p_y   (gate, no loss, no X-component error)
//   clean     = 1 - p_g - p_x - p_y - p_z
//   last_gate = 1 - p_g - p_y - p_z   (final incoming gate: a bit flip there
//                                      meets no later bit-flip check)

namespace pb_terms {

Polynomial detected_without_null(const ErrorParams& p, PhotonGateCounts c) {
    double created = 1.0 - p.p_c;
    double no_flip = 1.0 - p.p_g - p.p_x - p.p_y;
    double coeff = created * ipow(1.0 - p.p_g, c.n_gamma + 1) * ipow(no_flip, c.n_delta - 1) * (1.0 - p.p_m);
    return Polynomial::affine(0.0, coeff);
}

Polynomial minus_errorless(const ErrorParams& p, PhotonGateCounts c) {
    double created = 1.0 - p.p_c;
    double clean = 1.0 - p.p_g - p.p_x - p.p_y - p.p_z;
    double last_gate = 1.0 - p.p_g - p.p_y - p.p_z;
    double coeff = created * ipow(clean, c.n_gamma + c.n_delta - 1) * last_gate * (1.0 - p.p_m - p.p_f) *
                   (1.0 - p.p_dc);
    return Polynomial::affine(0.0, -coeff);
}

Polynomial minus_benign_dark_count(const ErrorParams& p, PhotonGateCounts c, QuditDim dim) {
    double created = 1.0 - p.p_c;
    double no_flip = 1.0 - p.p_g - p.p_x - p.p_y;
    double coeff = created * ipow(no_flip, c.n_gamma + c.n_delta - 1) * p.p_dc / dim.value();
    return Polynomial::affine(0.0, -coeff);
}

Polynomial dark_count_without_photon(const ErrorParams& p, PhotonGateCounts c) {
    double created = 1.0 - p.p_c;
    return Polynomial::affine(p.p_dc, -created * ipow(1.0 - p.p_g, c.n_gamma) * p.p_dc);
}

Polynomial dark_count_after_final_gate_loss(const ErrorParams& p, PhotonGateCounts c) {
    double created = 1.0 - p.p_c;
    double no_flip = 1.0 - p.p_g - p.p_x - p.p_y;
    double coeff = created * ipow(1.0 - p.p_g, c.n_gamma) * ipow(no_flip, c.n_delta - 1) * p.p_g * p.p_dc;
    return Polynomial::affine(0.0, coeff);
}

Polynomial dark_count_after_null(const ErrorParams& p, PhotonGateCounts c) {
    double created = 1.0 - p.p_c;
    double no_flip = 1.0 - p.p_g - p.p_x - p.p_y;
    double coeff =
        created * ipow(1.0 - p.p_g, c.n_gamma) * ipow(no_flip, c.n_delta - 1) * (1.0 - p.p_g) * p.p_m * p.p_dc;
    return Polynomial::affine(0.0, coeff);
}

}  // namespace pb_terms

QuditOutcomeProbabilities per_qudit_probabilities(const ErrorParams& p, PhotonGateCounts c, QuditDim dim) {
    check_counts(c);
    p.validate();
    const double created = 1.0 - p.p_c;
    const double kept = 1.0 - p.p_g;
    const double no_flip = 1.0 - p.p_g - p.p_x - p.p_y;
    const double clean = 1.0 - p.p_g - p.p_x - p.p_y - p.p_z;
    const double last_gate = 1.0 - p.p_g - p.p_y - p.p_z;
    const int all_but_last = c.n_gamma + c.n_delta - 1;

    QuditOutcomeProbabilities out;
    double errorless = created * ipow(clean, all_but_last) * last_gate * (1.0 - p.p_m - p.p_f) * (1.0 - p.p_dc);
    double benign_dc = created * ipow(no_flip, all_but_last) * p.p_dc / dim.value();
    out.a = Polynomial::affine(0.0, errorless + benign_dc);

    out.b = pb_terms::detected_without_null(p, c);
    out.b += pb_terms::minus_errorless(p, c);
    out.b += pb_terms::minus_benign_dark_count(p, c, dim);
    out.b += pb_terms::dark_count_without_photon(p, c);
    out.b += pb_terms::dark_count_after_final_gate_loss(p, c);
    out.b += pb_terms::dark_count_after_null(p, c);

    double arrive = created * ipow(kept, c.n_gamma);
    double survive_to_last = arrive * ipow(no_flip, c.n_delta - 1);
    out.c = Polynomial::affine(1.0, -arrive + survive_to_last * p.p_g + survive_to_last * kept * p.p_m) *
            (1.0 - p.p_dc);
    return out;
}

double cavity_fidelity(double cooperativity) {
    if (!(cooperativity > 0.0)) {
        throw std::invalid_argument("cooperativity must be positive");
    }
    if (std::isinf(cooperativity)) {
        return 1.0;
    }
    double ratio = cooperativity / (1.0 + cooperativity);
    return ratio * ratio;
}

ScenarioPreset preset_by_name(const std::string& name) {
    if (name == "fig3") {
        return {PresetKind::kFig3, "fig3", 2};
    }
    if (name == "fig4") {
        return {PresetKind::kFig4, "fig4", 1};
    }
    throw std::out_of_range("unknown preset '" + name + "' (expected fig3 or fig4)");
}

ErrorParams resolve_preset(const ScenarioPreset& preset, const std::vector<double>& knobs) {
    if (knobs.size() != preset.arity) {
        throw std::invalid_argument("preset " + preset.name + " takes " + std::to_string(preset.arity) +
                                    " knob(s), got " + std::to_string(knobs.size()));
    }
    double logical = 0.0;
    double erasure = 0.0;
    switch (preset.kind) {
        case PresetKind::kFig3:
            logical = knobs[0];
            erasure = knobs[1];
            break;
        case PresetKind::kFig4:
            logical = erasure = knobs[0];
            break;
    }
    ErrorParams p;
    p.p_c = p.p_g = p.p_m = erasure;
    p.p_x = p.p_y = p.p_z = logical / 3.0;
    p.p_f = 2.0 * logical / 3.0;
    p.p_dc = 0.0;
    p.validate();
    return p;
}

}  // namespace srep
