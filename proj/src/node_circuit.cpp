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

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace srep {

const char* stage_name(Stage s) {
    switch (s) {
        case Stage::kEncoding:
            return "encoding";
        case Stage::kOutgoingEntangle:
            return "outgoing_entangle";
        case Stage::kIncomingEntangle:
            return "incoming_entangle";
        case Stage::kQndStabilizer:
            return "qnd_stabilizer";
    }
    return "?";
}

namespace {

MatterSchedule schedule_from(Stage stage, std::string label, const std::vector<int>& exponents,
                             const std::function<int(int)>& power_of) {
    MatterSchedule s{stage, std::move(label), {}, false};
    for (std::size_t j = 0; j < exponents.size(); j++) {
        if (exponents[j] != 0) {
            s.gates.push_back({j, power_of(exponents[j])});
        }
    }
    return s;
}

}  // namespace

NodeCircuit build_node_circuit(const StabilizerCode& code, CircuitOptions options) {
    const int D = code.dim.value();
    const auto n = static_cast<std::size_t>(code.n);
    NodeCircuit c;
    c.code = code;
    c.options = options;
    auto same = [](int e) { return e; };

    for (std::size_t i = 0; i < code.x_stabilizers.size(); i++) {
        c.encoding_rows.push_back(
            schedule_from(Stage::kEncoding, "encode[" + std::to_string(i) + "]", code.x_stabilizers[i].x_exp(), same));
    }
    for (std::size_t j = 0; j < code.logical_x.size(); j++) {
        c.outgoing_entangle.push_back(schedule_from(Stage::kOutgoingEntangle, "controlled-Xbar[" + std::to_string(j) + "]",
                                                    code.logical_x[j].x_exp(), same));
    }
    // Photon-controlled Z^q becomes R_M^-1 CPHASE^(D-q) R_M on the matter qudit.
    for (std::size_t j = 0; j < code.logical_z.size(); j++) {
        auto s = schedule_from(Stage::kIncomingEntangle, "Zbar^C[" + std::to_string(j) + "]", code.logical_z[j].z_exp(),
                               [D](int q) { return (D - q) % D; });
        s.r_on_matter = true;
        c.incoming_entangle.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < code.z_stabilizers.size(); i++) {
        c.qnd_stabilizers.push_back(schedule_from(Stage::kQndStabilizer, "qnd[" + std::to_string(i) + "]",
                                                  code.z_stabilizers[i].z_exp(), same));
    }
    c.cheap_stabilizers = code.x_stabilizers;
    c.r = static_cast<int>(code.z_stabilizers.size());
    if ((code.n - code.k) % 2 != 0 || c.r != (code.n - code.k) / 2) {
        c.balanced_split = false;
        c.notes.push_back("r = " + std::to_string(c.r) + " differs from (n - k) / 2; built with r = |z_stabilizers|");
    }

    c.outgoing_slots.assign(n, {});
    c.incoming_slots.assign(n, {});
    std::vector<bool> emitted(n, false);
    auto add = [&](std::vector<std::vector<GateSlot>>& slots, const std::vector<MatterSchedule>& stage_list) {
        for (std::size_t s = 0; s < stage_list.size(); s++) {
            for (const auto& g : stage_list[s].gates) {
                if (stage_list[s].stage == Stage::kEncoding && options.emission_is_first_encoding_gate &&
                    !emitted[g.photon]) {
                    emitted[g.photon] = true;
                    continue;
                }
                slots[g.photon].push_back({stage_list[s].stage, s, g.power});
            }
        }
    };
    add(c.outgoing_slots, c.encoding_rows);
    add(c.outgoing_slots, c.outgoing_entangle);
    add(c.incoming_slots, c.incoming_entangle);
    add(c.incoming_slots, c.qnd_stabilizers);

    for (std::size_t j = 0; j < n; j++) {
        c.n_gamma.push_back(static_cast<int>(c.outgoing_slots[j].size()));
        c.n_delta.push_back(static_cast<int>(c.incoming_slots[j].size()));
        if (c.n_delta.back() < 1) {
            throw std::invalid_argument("photon " + std::to_string(j) +
                                        " meets no incoming gate; its loss would go undetected");
        }
    }
    c.matter_qudit_total = code.k + c.r;
    c.encoding_elements = static_cast<int>(code.x_stabilizers.size());
    c.decoder = std::make_shared<const SyndromeDecoder>(code);
    return c;
}

GateCountReport gate_count_report(const NodeCircuit& c) {
    GateCountReport rep;
    rep.code_name = c.code.name;
    rep.n_gamma = c.n_gamma;
    rep.n_delta = c.n_delta;
    auto total = [](const std::vector<MatterSchedule>& v) {
        int t = 0;
        for (const auto& s : v) {
            t += static_cast<int>(s.gates.size());
        }
        return t;
    };
    rep.totals.encoding = total(c.encoding_rows);
    rep.totals.outgoing_entangle = total(c.outgoing_entangle);
    rep.totals.incoming_entangle = total(c.incoming_entangle);
    rep.totals.qnd = total(c.qnd_stabilizers);
    rep.matter_qudit_total = c.matter_qudit_total;
    rep.encoding_elements = c.encoding_elements;
    rep.r = c.r;
    return rep;
}

nlohmann::json to_json(const GateCountReport& r) {
    nlohmann::json j;
    j["code"] = r.code_name;
    j["n_gamma"] = r.n_gamma;
    j["n_delta"] = r.n_delta;
    j["stage_totals"] = {{"encoding", r.totals.encoding},
                         {"outgoing_entangle", r.totals.outgoing_entangle},
                         {"incoming_entangle", r.totals.incoming_entangle},
                         {"qnd", r.totals.qnd}};
    j["matter_qudit_total"] = r.matter_qudit_total;
    j["encoding_elements"] = r.encoding_elements;
    j["r"] = r.r;
    return j;
}

nlohmann::json circuit_to_json(const NodeCircuit& c) {
    auto stage = [](const std::vector<MatterSchedule>& v) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& s : v) {
            nlohmann::json gates = nlohmann::json::array();
            for (const auto& g : s.gates) {
                gates.push_back({{"photon", g.photon}, {"cphase_power", g.power}});
            }
            arr.push_back({{"label", s.label}, {"r_on_matter", s.r_on_matter}, {"gates", gates}});
        }
        return arr;
    };
    nlohmann::json j;
    j["code"] = c.code.name;
    j["stages"] = {{"encoding", stage(c.encoding_rows)},
                   {"outgoing_entangle", stage(c.outgoing_entangle)},
                   {"incoming_entangle", stage(c.incoming_entangle)},
                   {"qnd_stabilizers", stage(c.qnd_stabilizers)}};
    nlohmann::json cheap = nlohmann::json::array();
    for (const auto& p : c.cheap_stabilizers) {
        cheap.push_back(p.x_exp());
    }
    j["stages"]["cheap_stabilizers"] = cheap;
    j["balanced_split"] = c.balanced_split;
    j["notes"] = c.notes;
    j["emission_is_first_encoding_gate"] = c.options.emission_is_first_encoding_gate;
    j["gate_counts"] = to_json(gate_count_report(c));
    return j;
}

namespace {

std::size_t syndrome_index(const std::vector<int>& s, int D) {
    std::size_t idx = 0;
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
        idx = idx * static_cast<std::size_t>(D) + static_cast<std::size_t>(*it);
    }
    return idx;
}

/// Visits every assignment of nonzero residues to every size-w subset of
/// `sites`, in lexicographic order. Stops when visit returns true.
bool for_each_pattern(const std::vector<std::size_t>& sites, std::size_t w, int D,
                      const std::function<bool(const std::vector<std::size_t>&, const std::vector<int>&)>& visit) {
    if (w > sites.size()) {
        return false;
    }
    std::vector<std::size_t> pick(w);
    for (std::size_t i = 0; i < w; i++) {
        pick[i] = i;
    }
    std::vector<std::size_t> chosen(w);
    while (true) {
        for (std::size_t i = 0; i < w; i++) {
            chosen[i] = sites[pick[i]];
        }
        std::vector<int> vals(w, 1);
        while (true) {
            if (visit(chosen, vals)) {
                return true;
            }
            std::size_t i = w;
            while (i > 0 && vals[i - 1] == D - 1) {
                vals[i - 1] = 1;
                i--;
            }
            if (i == 0) {
                break;
            }
            vals[i - 1]++;
        }
        std::size_t i = w;
        while (i > 0 && pick[i - 1] == sites.size() - w + (i - 1)) {
            i--;
        }
        if (i == 0) {
            return false;
        }
        pick[i - 1]++;
        for (std::size_t j = i; j < w; j++) {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

}  // namespace

SyndromeDecoder::SyndromeDecoder(const StabilizerCode& code)
    : code_(code), budget_(correctability_budget(code.d)) {
    const int D = code.dim.value();
    const auto n = static_cast<std::size_t>(code.n);
    const int t = (code.d - 1) / 2;
    std::vector<std::size_t> all(n);
    for (std::size_t j = 0; j < n; j++) {
        all[j] = j;
    }
    auto build = [&](Half& half, ModMatrix checks) {
        half.checks = std::move(checks);
        std::size_t size = 1;
        for (std::size_t i = 0; i < half.checks.size(); i++) {
            size *= static_cast<std::size_t>(D);
            if (size > (std::size_t{1} << 24)) {
                throw std::invalid_argument("syndrome space too large for a lookup table");
            }
        }
        half.table.assign(size, std::nullopt);
        half.table[0] = std::vector<int>(n, 0);
        for (int w = 1; w <= t; w++) {
            for_each_pattern(all, static_cast<std::size_t>(w), D,
                             [&](const std::vector<std::size_t>& sites, const std::vector<int>& vals) {
                                 std::vector<int> e(n, 0);
                                 for (std::size_t i = 0; i < sites.size(); i++) {
                                     e[sites[i]] = vals[i];
                                 }
                                 auto idx = syndrome_index(mat_vec_mod(half.checks, e, code_.dim), D);
                                 if (!half.table[idx]) {
                                     half.table[idx] = std::move(e);
                                 }
                                 return false;
                             });
        }
    };
    build(x_errors_, code.z_checks());
    build(z_errors_, code.x_checks());
}

std::vector<int> SyndromeDecoder::syndrome_of(const PauliOperator& error) const {
    if (error.size() != static_cast<std::size_t>(code_.n) || !(error.dim() == code_.dim)) {
        throw ShapeError("error operator does not match the code");
    }
    auto s = mat_vec_mod(x_errors_.checks, error.x_exp(), code_.dim);
    auto sz = mat_vec_mod(z_errors_.checks, error.z_exp(), code_.dim);
    s.insert(s.end(), sz.begin(), sz.end());
    return s;
}

std::optional<std::vector<int>> SyndromeDecoder::decode_half(const Half& half, const std::vector<int>& syndrome,
                                                             const std::vector<bool>& losses,
                                                             int max_unlocated) const {
    const int D = code_.dim.value();
    const auto n = static_cast<std::size_t>(code_.n);
    std::vector<std::size_t> located, unlocated;
    for (std::size_t j = 0; j < n; j++) {
        (losses[j] ? located : unlocated).push_back(j);
    }
    if (located.empty()) {
        const auto& hit = half.table[syndrome_index(syndrome, D)];
        if (!hit) {
            return std::nullopt;
        }
        int w = static_cast<int>(std::count_if(hit->begin(), hit->end(), [](int v) { return v != 0; }));
        if (w > max_unlocated) {
            return std::nullopt;
        }
        return hit;
    }
    // Columns restricted to the located set.
    ModMatrix sub(half.checks.size(), std::vector<int>(located.size(), 0));
    for (std::size_t r = 0; r < half.checks.size(); r++) {
        for (std::size_t c = 0; c < located.size(); c++) {
            sub[r][c] = half.checks[r][located[c]];
        }
    }
    std::optional<std::vector<int>> found;
    for (int l = 0; l <= max_unlocated && !found; l++) {
        for_each_pattern(unlocated, static_cast<std::size_t>(l), l == 0 ? 2 : D,
                         [&](const std::vector<std::size_t>& sites, const std::vector<int>& vals) {
                             std::vector<int> e(n, 0);
                             for (std::size_t i = 0; i < sites.size(); i++) {
                                 e[sites[i]] = vals[i];
                             }
                             auto partial = mat_vec_mod(half.checks, e, code_.dim);
                             std::vector<int> residual(syndrome.size());
                             for (std::size_t r = 0; r < syndrome.size(); r++) {
                                 residual[r] = code_.dim.mod(syndrome[r] - partial[r]);
                             }
                             auto sol = solve_mod(sub, residual, located.size(), code_.dim);
                             if (!sol) {
                                 return false;
                             }
                             for (std::size_t c = 0; c < located.size(); c++) {
                                 e[located[c]] = (*sol)[c];
                             }
                             found = std::move(e);
                             return true;
                         });
    }
    return found;
}

DecodeOutcome SyndromeDecoder::decode(const std::vector<int>& syndrome, const std::vector<bool>& losses) const {
    const auto n = static_cast<std::size_t>(code_.n);
    const std::size_t nz = x_errors_.checks.size();
    if (syndrome.size() != nz + z_errors_.checks.size()) {
        throw ShapeError("syndrome length must equal n - k");
    }
    if (losses.size() != n) {
        throw ShapeError("loss mask length must equal n");
    }
    int located = static_cast<int>(std::count(losses.begin(), losses.end(), true));
    int max_l = budget_.max_unlocated(located);
    DecodeOutcome out;
    if (max_l < 0) {
        return out;
    }
    std::vector<int> sx(syndrome.begin(), syndrome.begin() + static_cast<std::ptrdiff_t>(nz));
    std::vector<int> sz(syndrome.begin() + static_cast<std::ptrdiff_t>(nz), syndrome.end());
    for (auto& v : sx) {
        v = code_.dim.mod(v);
    }
    for (auto& v : sz) {
        v = code_.dim.mod(v);
    }
    auto ex = decode_half(x_errors_, sx, losses, max_l);
    auto ez = decode_half(z_errors_, sz, losses, max_l);
    if (!ex || !ez) {
        return out;
    }
    int w = 0;
    for (std::size_t j = 0; j < n; j++) {
        w += !losses[j] && ((*ex)[j] != 0 || (*ez)[j] != 0);
    }
    if (w > max_l) {
        return out;
    }
    out.correctable = true;
    out.unlocated_weight = w;
    out.frame = PauliOperator(code_.dim, *ex, *ez);
    return out;
}

bool SyndromeDecoder::recovers(const PauliOperator& frame, const PauliOperator& error) const {
    std::vector<int> x(frame.size()), z(frame.size());
    for (std::size_t j = 0; j < frame.size(); j++) {
        x[j] = error.x(j) - frame.x(j);
        z[j] = error.z(j) - frame.z(j);
    }
    PauliOperator residual(code_.dim, x, z);
    auto commutes_with_all = [&](const std::vector<PauliOperator>& ops) {
        return std::all_of(ops.begin(), ops.end(),
                           [&](const PauliOperator& s) { return commutation_phase(residual, s) == 0; });
    };
    return commutes_with_all(code_.x_stabilizers) && commutes_with_all(code_.z_stabilizers) &&
           commutes_with_all(code_.logical_x) && commutes_with_all(code_.logical_z);
}

DecodeOutcome syndrome_decode(const NodeCircuit& circuit, const std::vector<int>& syndrome,
                              const std::vector<bool>& losses) {
    return circuit.decoder->decode(syndrome, losses);
}

}  // namespace srep
