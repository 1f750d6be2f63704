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
#include <random>
#include <stdexcept>

#include "gtest/gtest.h"

using namespace srep;

namespace {

enum Ev { kOk, kX, kY, kZ, kLoss };

struct Tally {
    double a = 0.0, b = 0.0, c = 0.0, fatal = 0.0;
};

// Walks every history of one photon: creation, each gate outcome, the fiber,
// the detector and the dark-count channel, and sums the weight of each class.
class Enumerator {
  public:
    Enumerator(const ErrorParams& p, int g, int h, int dim, double u) : p_(p), g_(g), h_(h), dim_(dim), u_(u) {}

    Tally run() {
        Tally t;
        events_.clear();
        // Not created.
        finish_absent(p_.p_c, t);
        gates(1.0 - p_.p_c, t);
        return t;
    }

  private:
    double weight(Ev e) const {
        switch (e) {
            case kOk: return 1.0 - p_.p_g - p_.p_x - p_.p_y - p_.p_z;
            case kX: return p_.p_x;
            case kY: return p_.p_y;
            case kZ: return p_.p_z;
            case kLoss: return p_.p_g;
        }
        return 0.0;
    }

    void finish_absent(double w, Tally& t) {
        t.b += w * p_.p_dc;
        t.c += w * (1.0 - p_.p_dc);
    }

    void gates(double w, Tally& t) {
        const std::size_t s = events_.size();
        if (s == static_cast<std::size_t>(g_ + h_)) {
            detect(w, t);
            return;
        }
        double here = w;
        if (s == static_cast<std::size_t>(g_)) {
            finish_absent(w * (1.0 - u_), t);
            here = w * u_;
        }
        for (Ev e : {kOk, kX, kY, kZ, kLoss}) {
            double we = here * weight(e);
            if (we == 0.0) {
                continue;
            }
            if (e == kLoss) {
                lost_at(s, we, t);
                continue;
            }
            events_.push_back(e);
            gates(we, t);
            events_.pop_back();
        }
    }

    void lost_at(std::size_t s, double w, Tally& t) {
        if (s < static_cast<std::size_t>(g_)) {
            finish_absent(w, t);
            return;
        }
        if (fatal_prefix()) {
            t.fatal += w;
            return;
        }
        if (s + 1 < static_cast<std::size_t>(g_ + h_)) {
            t.fatal += w;
            return;
        }
        // Last incoming gate lost: a dark count can still fire.
        dark(w, t);
    }

    bool fatal_prefix() const {
        for (std::size_t s = g_; s < events_.size() && s + 1 < static_cast<std::size_t>(g_ + h_); s++) {
            if (events_[s] == kX || events_[s] == kY) {
                return true;
            }
        }
        return false;
    }

    // Photon gave no detector result; only a dark count can click.
    void dark(double w, Tally& t) {
        bool gamma_no_flip = true;
        for (int s = 0; s < g_ && s < static_cast<int>(events_.size()); s++) {
            gamma_no_flip &= events_[s] != kX && events_[s] != kY;
        }
        double benign = p_.p_dc / dim_;
        double malign = p_.p_dc - benign;
        if (gamma_no_flip) {
            t.a += w * benign;
        } else {
            t.b += w * benign;
        }
        t.b += w * malign;
        t.c += w * (1.0 - p_.p_dc);
    }

    void detect(double w, Tally& t) {
        if (fatal_prefix()) {
            t.fatal += w;
            return;
        }
        // Null result: like a loss at the detector.
        dark(w * p_.p_m, t);
        // A dark count overrides whatever the photon did.
        double clicked = w * (1.0 - p_.p_m) * (1.0 - p_.p_dc);
        bool gamma_no_flip = true;
        for (int s = 0; s < g_; s++) {
            gamma_no_flip &= events_[s] != kX && events_[s] != kY;
        }
        if (gamma_no_flip) {
            t.a += w * (1.0 - p_.p_m) * p_.p_dc / dim_;
        } else {
            t.b += w * (1.0 - p_.p_m) * p_.p_dc / dim_;
        }
        t.b += w * (1.0 - p_.p_m) * p_.p_dc * (1.0 - 1.0 / dim_);

        bool clean = true;
        for (std::size_t s = 0; s + 1 < events_.size(); s++) {
            clean &= events_[s] == kOk;
        }
        Ev last = events_.back();
        bool last_ok = last == kOk || last == kX;
        double no_flip = (1.0 - p_.p_f - p_.p_m) / (1.0 - p_.p_m);
        if (clean && last_ok) {
            t.a += clicked * no_flip;
            t.b += clicked * (1.0 - no_flip);
        } else {
            t.b += clicked;
        }
    }

    ErrorParams p_;
    int g_, h_, dim_;
    double u_;
    std::vector<Ev> events_;
};

ErrorParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> small(0.0, 0.08);
    ErrorParams p;
    p.p_c = small(rng);
    p.p_g = small(rng);
    p.p_x = small(rng);
    p.p_y = small(rng);
    p.p_z = small(rng);
    p.p_m = small(rng);
    p.p_f = small(rng);
    p.p_dc = small(rng);
    return p;
}

}  // namespace

TEST(PerQudit, MatchesExhaustiveEnumeration) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; trial++) {
        ErrorParams p = random_params(rng);
        for (int dim : {2, 3}) {
            for (int g = 0; g <= 3; g++) {
                for (int h = 1; h <= 3; h++) {
                    QuditOutcomeProbabilities q = per_qudit_probabilities(p, {g, h}, QuditDim(dim));
                    for (double u : {0.3, 0.8, 1.0}) {
                        Tally t = Enumerator(p, g, h, dim, u).run();
                        EXPECT_NEAR(q.a(u), t.a, 1e-13) << "g=" << g << " h=" << h << " D=" << dim;
                        EXPECT_NEAR(q.b(u), t.b, 1e-13) << "g=" << g << " h=" << h << " D=" << dim;
                        EXPECT_NEAR(q.c(u), t.c, 1e-13) << "g=" << g << " h=" << h << " D=" << dim;
                        EXPECT_NEAR(t.a + t.b + t.c + t.fatal, 1.0, 1e-13);
                    }
                }
            }
        }
    }
}

TEST(PerQudit, TermsSumToB) {
    std::mt19937_64 rng(6);
    ErrorParams p = random_params(rng);
    PhotonGateCounts c{3, 2};
    QuditDim dim(3);
    Polynomial sum = pb_terms::detected_without_null(p, c) + pb_terms::minus_errorless(p, c) +
                     pb_terms::minus_benign_dark_count(p, c, dim) + pb_terms::dark_count_without_photon(p, c) +
                     pb_terms::dark_count_after_final_gate_loss(p, c) + pb_terms::dark_count_after_null(p, c);
    QuditOutcomeProbabilities q = per_qudit_probabilities(p, c, dim);
    for (double u : {0.0, 0.5, 1.0}) {
        EXPECT_NEAR(sum(u), q.b(u), 1e-15);
    }
}

TEST(PerQudit, ProbabilitiesAreBoundedAndLinear) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; trial++) {
        ErrorParams p = random_params(rng);
        QuditOutcomeProbabilities q = per_qudit_probabilities(p, {trial % 4, 1 + trial % 3}, QuditDim(2));
        EXPECT_LE(q.a.degree(), 1u);
        EXPECT_LE(q.b.degree(), 1u);
        EXPECT_LE(q.c.degree(), 1u);
        for (double u = 0.0; u <= 1.0; u += 0.125) {
            EXPECT_GE(q.a(u), -1e-15);
            EXPECT_GE(q.b(u), -1e-15);
            EXPECT_GE(q.c(u), -1e-15);
            EXPECT_LE(q.a(u) + q.b(u) + q.c(u), 1.0 + 1e-12);
        }
    }
}

TEST(PerQudit, NoErrorsLeavesOnlyFiberLoss) {
    QuditOutcomeProbabilities q = per_qudit_probabilities(ErrorParams{}, {2, 3}, QuditDim(2));
    for (double u : {0.1, 0.7, 1.0}) {
        EXPECT_DOUBLE_EQ(q.a(u), u);
        EXPECT_DOUBLE_EQ(q.b(u), 0.0);
        EXPECT_DOUBLE_EQ(q.c(u), 1.0 - u);
    }
}

TEST(PerQudit, MoreGatesNeverHelp) {
    std::mt19937_64 rng(8);
    ErrorParams p = random_params(rng);
    for (int g = 0; g < 4; g++) {
        auto fewer = per_qudit_probabilities(p, {g, 2}, QuditDim(2));
        auto more = per_qudit_probabilities(p, {g + 1, 2}, QuditDim(2));
        EXPECT_LE(more.a(0.9), fewer.a(0.9));
    }
}

TEST(PerQudit, RejectsBadCounts) {
    EXPECT_THROW(per_qudit_probabilities(ErrorParams{}, {-1, 1}, QuditDim(2)), std::invalid_argument);
    EXPECT_THROW(per_qudit_probabilities(ErrorParams{}, {1, 0}, QuditDim(2)), std::invalid_argument);
}

TEST(ErrorParams, Validation) {
    ErrorParams p;
    EXPECT_NO_THROW(p.validate());
    p.p_x = -0.1;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = ErrorParams{};
    p.p_g = 0.5;
    p.p_z = 0.6;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = ErrorParams{};
    p.p_m = 0.7;
    p.p_f = 0.4;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = ErrorParams{};
    p.alpha = 0.0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(ErrorParams, JsonRoundTrip) {
    std::mt19937_64 rng(9);
    ErrorParams p = random_params(rng);
    EXPECT_EQ(error_params_from_json(to_json(p)), p);
    EXPECT_THROW(error_params_from_json(nlohmann::json{{"p_q", 0.1}}), std::invalid_argument);
    EXPECT_THROW(error_params_from_json(nlohmann::json::array()), std::invalid_argument);
    EXPECT_THROW(error_params_from_json(nlohmann::json{{"p_c", 2.0}}), std::invalid_argument);
}

TEST(Presets, ResolveToExpectedRates) {
    ErrorParams p = resolve_preset(preset_by_name("fig3"), {3e-3, 1e-2});
    EXPECT_DOUBLE_EQ(p.p_c, 1e-2);
    EXPECT_DOUBLE_EQ(p.p_g, 1e-2);
    EXPECT_DOUBLE_EQ(p.p_m, 1e-2);
    EXPECT_DOUBLE_EQ(p.p_x, 1e-3);
    EXPECT_DOUBLE_EQ(p.p_y, 1e-3);
    EXPECT_DOUBLE_EQ(p.p_z, 1e-3);
    EXPECT_DOUBLE_EQ(p.p_f, 2e-3);
    EXPECT_DOUBLE_EQ(p.p_dc, 0.0);

    ErrorParams q = resolve_preset(preset_by_name("fig4"), {3e-4});
    EXPECT_DOUBLE_EQ(q.p_c, 3e-4);
    EXPECT_DOUBLE_EQ(q.p_x, 1e-4);
    EXPECT_DOUBLE_EQ(q.p_f, 2e-4);

    EXPECT_THROW(preset_by_name("fig5"), std::out_of_range);
    EXPECT_THROW(resolve_preset(preset_by_name("fig4"), {1e-3, 1e-3}), std::invalid_argument);
}

TEST(Cavity, FidelityFromCooperativity) {
    EXPECT_DOUBLE_EQ(cavity_fidelity(1.0), 0.25);
    EXPECT_DOUBLE_EQ(cavity_fidelity(100.0), (100.0 / 101.0) * (100.0 / 101.0));
    EXPECT_DOUBLE_EQ(cavity_fidelity(INFINITY), 1.0);
    EXPECT_THROW(cavity_fidelity(0.0), std::invalid_argument);
    EXPECT_THROW(cavity_fidelity(-1.0), std::invalid_argument);
}
