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

#include "srep/node_circuit.hpp"

#include <numeric>
#include <random>

#include "gtest/gtest.h"

using namespace srep;

namespace {

// Independent tally: photon j meets every X-type row and logical X containing
// it on the way out, every logical Z and Z-type row containing it on the way in.
std::pair<std::vector<int>, std::vector<int>> hand_tally(const StabilizerCode& code) {
    std::vector<int> g(code.n, 0), h(code.n, 0);
    for (int j = 0; j < code.n; j++) {
        for (const auto& s : code.x_stabilizers) {
            g[j] += s.x(j) != 0;
        }
        for (const auto& l : code.logical_x) {
            g[j] += l.x(j) != 0;
        }
        for (const auto& l : code.logical_z) {
            h[j] += l.z(j) != 0;
        }
        for (const auto& s : code.z_stabilizers) {
            h[j] += s.z(j) != 0;
        }
    }
    return {g, h};
}

PauliOperator random_single(std::mt19937_64& rng, QuditDim dim, std::size_t n, std::size_t site) {
    std::uniform_int_distribution<int> digit(0, dim.value() - 1);
    std::vector<int> x(n, 0), z(n, 0);
    do {
        x[site] = digit(rng);
        z[site] = digit(rng);
    } while (x[site] == 0 && z[site] == 0);
    return PauliOperator(dim, x, z);
}

}  // namespace

TEST(NodeCircuit, GateCountsMatchHandTally) {
    for (const auto& code : builtin_codes()) {
        NodeCircuit c = build_node_circuit(code);
        auto [g, h] = hand_tally(code);
        EXPECT_EQ(c.n_gamma, g) << code.name;
        EXPECT_EQ(c.n_delta, h) << code.name;
    }
}

TEST(NodeCircuit, RegressionFixtures) {
    EXPECT_EQ(build_node_circuit(find_builtin("422")).n_gamma, (std::vector<int>{3, 2, 2, 1}));
    EXPECT_EQ(build_node_circuit(find_builtin("422")).n_delta, (std::vector<int>{3, 2, 2, 1}));
    EXPECT_EQ(build_node_circuit(find_builtin("713")).n_gamma, (std::vector<int>{2, 2, 3, 1, 2, 2, 3}));
    EXPECT_EQ(build_node_circuit(find_builtin("qutrit")).n_gamma, (std::vector<int>{2, 2, 1}));
    EXPECT_EQ(build_node_circuit(find_builtin("qutrit")).n_delta, (std::vector<int>{2, 2, 1}));
    EXPECT_EQ(build_node_circuit(find_builtin("golay")).n_delta,
              (std::vector<int>{2, 3, 4, 5, 5, 6, 5, 6, 6, 6, 7, 6, 6, 5, 5, 3, 3, 4, 2, 2, 2, 1, 1}));
}

TEST(NodeCircuit, ResourceColumns) {
    const std::pair<int, int> expected[] = {{3, 1}, {4, 3}, {12, 11}, {2, 1}};
    for (std::size_t i = 0; i < 4; i++) {
        NodeCircuit c = build_node_circuit(builtin_codes()[i]);
        EXPECT_EQ(c.matter_qudit_total, expected[i].first) << c.code.name;
        EXPECT_EQ(c.encoding_elements, expected[i].second) << c.code.name;
        EXPECT_TRUE(c.balanced_split) << c.code.name;
    }
}

TEST(NodeCircuit, EncodingGatesOf422) {
    NodeCircuit c = build_node_circuit(find_builtin("422"));
    GateCountReport rep = gate_count_report(c);
    EXPECT_EQ(rep.totals.encoding, 4);
    EXPECT_EQ(rep.totals.outgoing_entangle, 4);
    EXPECT_EQ(std::accumulate(c.n_gamma.begin(), c.n_gamma.end(), 0),
              rep.totals.encoding + rep.totals.outgoing_entangle);
}

TEST(NodeCircuit, EmissionOptionRemovesOneGatePerEncodedPhoton) {
    for (const auto& code : builtin_codes()) {
        NodeCircuit plain = build_node_circuit(code);
        NodeCircuit emit = build_node_circuit(code, CircuitOptions{true});
        for (std::size_t j = 0; j < plain.photons(); j++) {
            bool encoded = false;
            for (const auto& s : code.x_stabilizers) {
                encoded |= s.x(j) != 0;
            }
            EXPECT_EQ(emit.n_gamma[j], plain.n_gamma[j] - (encoded ? 1 : 0)) << code.name << " photon " << j;
            EXPECT_EQ(emit.n_delta[j], plain.n_delta[j]);
        }
    }
}

TEST(NodeCircuit, SlotsAgreeWithCounts) {
    for (const auto& code : builtin_codes()) {
        NodeCircuit c = build_node_circuit(code);
        for (std::size_t j = 0; j < c.photons(); j++) {
            EXPECT_EQ(static_cast<int>(c.outgoing_slots[j].size()), c.n_gamma[j]);
            EXPECT_EQ(static_cast<int>(c.incoming_slots[j].size()), c.n_delta[j]);
            for (const auto& s : c.incoming_slots[j]) {
                EXPECT_NE(s.power % code.dim.value(), 0);
            }
        }
    }
}

TEST(NodeCircuit, JsonReportsCounts) {
    NodeCircuit c = build_node_circuit(find_builtin("qutrit"));
    nlohmann::json j = circuit_to_json(c);
    EXPECT_EQ(j.at("stages").at("encoding").size(), c.encoding_rows.size());
    EXPECT_EQ(j.at("stages").at("incoming_entangle").size(), c.incoming_entangle.size());
    nlohmann::json r = to_json(gate_count_report(c));
    EXPECT_EQ(r.at("n_gamma").get<std::vector<int>>(), c.n_gamma);
    EXPECT_EQ(r.at("n_delta").get<std::vector<int>>(), c.n_delta);
    EXPECT_EQ(r.at("matter_qudit_total").get<int>(), 2);
}

TEST(Decoder, CorrectsEverySingleErrorForDistanceThree) {
    for (const char* name : {"713", "golay"}) {
        const StabilizerCode& code = find_builtin(name);
        NodeCircuit c = build_node_circuit(code);
        std::mt19937_64 rng(11);
        std::vector<bool> none(code.n, false);
        for (int j = 0; j < code.n; j++) {
            for (int rep = 0; rep < 3; rep++) {
                PauliOperator e = random_single(rng, code.dim, code.n, j);
                DecodeOutcome out = syndrome_decode(c, c.decoder->syndrome_of(e), none);
                ASSERT_TRUE(out.correctable) << name << " " << e.str();
                EXPECT_TRUE(c.decoder->recovers(*out.frame, e)) << name << " " << e.str();
            }
        }
    }
}

TEST(Decoder, RecoversRandomPatternsWithinBudget) {
    std::mt19937_64 rng(12);
    for (const auto& code : builtin_codes()) {
        NodeCircuit c = build_node_circuit(code);
        CorrectabilityBudget budget = correctability_budget(code);
        std::uniform_int_distribution<int> digit(0, code.dim.value() - 1);
        for (auto [l, q] : budget.pairs) {
            for (int trial = 0; trial < 20; trial++) {
                std::vector<int> perm(code.n);
                std::iota(perm.begin(), perm.end(), 0);
                std::shuffle(perm.begin(), perm.end(), rng);
                std::vector<bool> losses(code.n, false);
                std::vector<int> x(code.n, 0), z(code.n, 0);
                for (int i = 0; i < q; i++) {
                    losses[perm[i]] = true;
                    x[perm[i]] = digit(rng);
                    z[perm[i]] = digit(rng);
                }
                for (int i = q; i < q + l; i++) {
                    x[perm[i]] = digit(rng);
                    z[perm[i]] = digit(rng);
                }
                PauliOperator e(code.dim, x, z);
                DecodeOutcome out = syndrome_decode(c, c.decoder->syndrome_of(e), losses);
                ASSERT_TRUE(out.correctable) << code.name << " l=" << l << " q=" << q << " " << e.str();
                EXPECT_TRUE(c.decoder->recovers(*out.frame, e)) << code.name << " " << e.str();
            }
        }
    }
}

TEST(Decoder, StabilizerErrorsHaveZeroSyndrome) {
    for (const auto& code : builtin_codes()) {
        NodeCircuit c = build_node_circuit(code);
        for (const auto& s : code.x_stabilizers) {
            for (int v : c.decoder->syndrome_of(s)) {
                EXPECT_EQ(v, 0);
            }
            EXPECT_TRUE(c.decoder->recovers(PauliOperator::identity(code.dim, code.n), s));
        }
        for (const auto& l : code.logical_x) {
            EXPECT_FALSE(c.decoder->recovers(PauliOperator::identity(code.dim, code.n), l));
        }
    }
}

TEST(Decoder, QutritLossPlusFlipIsMiscorrected) {
    // One erasure plus one unlocated flip exceeds 2l + q <= 1. The syndrome
    // alone cannot tell, so the decoder blames the erasure and the residual is
    // a logical operator.
    const StabilizerCode& code = find_builtin("qutrit");
    NodeCircuit c = build_node_circuit(code);
    PauliOperator e = PauliOperator::x_on(code.dim, 3, 1);
    std::vector<bool> losses = {true, false, false};
    DecodeOutcome out = syndrome_decode(c, c.decoder->syndrome_of(e), losses);
    ASSERT_TRUE(out.frame.has_value());
    EXPECT_FALSE(c.decoder->recovers(*out.frame, e));
    EXPECT_FALSE(correctability_budget(code).admits(1, 1));
}

TEST(Decoder, TooManyUnlocatedErrorsReported) {
    const StabilizerCode& code = find_builtin("713");
    NodeCircuit c = build_node_circuit(code);
    std::vector<bool> none(7, false);
    PauliOperator e(code.dim, {1, 1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0});
    DecodeOutcome out = syndrome_decode(c, c.decoder->syndrome_of(e), none);
    if (out.correctable) {
        EXPECT_FALSE(c.decoder->recovers(*out.frame, e));
    }
}
