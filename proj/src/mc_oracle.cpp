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

#include "srep/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace srep {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Counter layout per photon: 0 creation, 1..kMaxSlots gates, then the fixed
// post-gate draws. Pauli choices for the decoder check live past all photons.
constexpr std::uint64_t kStride = 64;
constexpr std::uint64_t kMaxSlots = 56;
constexpr std::uint64_t kFiber = 60;
constexpr std::uint64_t kDetect = 61;
constexpr std::uint64_t kDark = 62;
constexpr std::uint64_t kBenign = 63;

/// Per-photon facts derived once per circuit.
struct OracleTables {
    std::vector<int> n_gamma;
    std::vector<int> n_delta;
    /// fatal_x[j][s]: an X-component error left on photon j after its incoming
    /// gate s reaches a matter qudit through a later incoming gate.
    std::vector<std::vector<bool>> fatal_x;
};

OracleTables build_tables(const NodeCircuit& circuit) {
    OracleTables t;
    t.n_gamma = circuit.n_gamma;
    t.n_delta = circuit.n_delta;
    QuditDim dim = circuit.code.dim;
    for (std::size_t j = 0; j < circuit.photons(); j++) {
        if (static_cast<std::uint64_t>(circuit.n_gamma[j] + circuit.n_delta[j]) > kMaxSlots) {
            throw std::invalid_argument("photon gate count exceeds the sampler's slot capacity");
        }
        const auto& slots = circuit.incoming_slots[j];
        std::vector<bool> fatal(slots.size(), false);
        for (std::size_t s = 0; s < slots.size(); s++) {
            // Photon on site 0; each later gate meets a fresh matter qudit on site 1.
            PauliOperator err = PauliOperator::x_on(dim, 2, 0);
            for (std::size_t later = s + 1; later < slots.size() && !fatal[s]; later++) {
                PauliOperator kicked = conjugate_by_cphase(err, 0, 1, slots[later].power);
                fatal[s] = kicked.x(1) != 0 || kicked.z(1) != 0;
            }
        }
        t.fatal_x.push_back(std::move(fatal));
    }
    return t;
}

GateEvent draw_gate(double r, const ErrorParams& p) {
    if (r < p.p_g) {
        return GateEvent::kLoss;
    }
    r -= p.p_g;
    if (r < p.p_x) {
        return GateEvent::kX;
    }
    r -= p.p_x;
    if (r < p.p_y) {
        return GateEvent::kY;
    }
    r -= p.p_y;
    if (r < p.p_z) {
        return GateEvent::kZ;
    }
    return GateEvent::kOk;
}

bool has_x_part(GateEvent e) { return e == GateEvent::kX || e == GateEvent::kY; }
bool has_z_part(GateEvent e) { return e == GateEvent::kZ || e == GateEvent::kY; }

PhotonClass classify(const PhotonTrace& t, int n_gamma, int n_delta, const std::vector<bool>& fatal_x) {
    bool gamma_loss = false;
    bool gamma_clean = true;
    bool gamma_no_flip = true;
    for (int s = 0; s < n_gamma; s++) {
        GateEvent e = t.gates[s];
        gamma_loss |= e == GateEvent::kLoss;
        gamma_clean &= e == GateEvent::kOk;
        gamma_no_flip &= !has_x_part(e);
    }
    bool arrived = t.created && !gamma_loss && t.transmitted;
    if (!arrived) {
        return t.dark_count ? PhotonClass::kB : PhotonClass::kC;
    }

    bool delta_clean = true;
    for (int s = 0; s + 1 < n_delta; s++) {
        GateEvent e = t.gates[n_gamma + s];
        if (e == GateEvent::kLoss || (has_x_part(e) && fatal_x[s])) {
            return PhotonClass::kFatal;
        }
        delta_clean &= e == GateEvent::kOk;
    }
    GateEvent last = t.gates[n_gamma + n_delta - 1];

    if (t.dark_count) {
        return (t.dark_count_benign && gamma_no_flip) ? PhotonClass::kA : PhotonClass::kB;
    }
    if (last == GateEvent::kLoss || t.null_result) {
        return PhotonClass::kC;
    }
    bool last_harmless = last == GateEvent::kOk || last == GateEvent::kX;
    if (gamma_clean && delta_clean && last_harmless && !t.readout_flip) {
        return PhotonClass::kA;
    }
    return PhotonClass::kB;
}

struct TrialCounts {
    std::uint64_t successes = 0;
    std::uint64_t alias = 0;
    std::uint64_t disagreements = 0;
};

TrialRecord run_trial(const NodeCircuit& circuit, const OracleTables& tables, const CorrectabilityBudget& budget,
                      const ErrorParams& p, double u, std::uint64_t seed, std::uint64_t trial, bool check_decoder) {
    CounterRng rng(seed, trial);
    const std::size_t n = circuit.photons();
    const int D = circuit.code.dim.value();
    TrialRecord rec;
    rec.seed = seed;
    rec.trial = trial;
    rec.photons.resize(n);
    rec.losses.assign(n, false);
    bool fatal = false;
    bool alias = false;

    for (std::size_t j = 0; j < n; j++) {
        PhotonTrace& t = rec.photons[j];
        const std::uint64_t base = j * kStride;
        const int G = tables.n_gamma[j];
        const int H = tables.n_delta[j];
        t.created = rng.uniform(base) >= p.p_c;
        t.gates.assign(G + H, GateEvent::kSkipped);
        bool present = t.created;
        for (int s = 0; s < G + H; s++) {
            if (!present) {
                break;
            }
            // Photons in the fiber are only sampled once the outgoing side is done.
            if (s == G) {
                t.transmitted = rng.uniform(base + kFiber) < u;
                present = t.transmitted;
                if (!present) {
                    break;
                }
            }
            GateEvent e = draw_gate(rng.uniform(base + 1 + s), p);
            t.gates[s] = e;
            present = e != GateEvent::kLoss;
        }
        if (present) {
            double r = rng.uniform(base + kDetect);
            t.null_result = r < p.p_m;
            t.readout_flip = !t.null_result && r < p.p_m + p.p_f;
        }
        t.dark_count = rng.uniform(base + kDark) < p.p_dc;
        if (t.dark_count) {
            t.dark_count_benign = rng.below(base + kBenign, D) == 0;
        }
        t.cls = classify(t, G, H, tables.fatal_x[j]);
        switch (t.cls) {
            case PhotonClass::kA:
                alias |= t.dark_count;
                break;
            case PhotonClass::kB:
                rec.unlocated++;
                break;
            case PhotonClass::kC:
                rec.located++;
                rec.losses[j] = true;
                break;
            case PhotonClass::kFatal:
                fatal = true;
                break;
        }
    }

    bool success = !fatal && budget.admits(rec.unlocated, rec.located);
    rec.outcome = !success ? DecodeResult::kUncorrectable
                           : (alias ? DecodeResult::kSuccessViaDarkCountAlias : DecodeResult::kSuccess);

    if (check_decoder && success && (rec.unlocated + rec.located) > 0) {
        QuditDim dim = circuit.code.dim;
        std::vector<int> ex(n, 0), ez(n, 0);
        const std::uint64_t extra = n * kStride;
        for (std::size_t j = 0; j < n; j++) {
            const PhotonTrace& t = rec.photons[j];
            const std::uint64_t c = extra + 4 * j;
            if (t.cls == PhotonClass::kC) {
                ex[j] = rng.below(c, D);
                ez[j] = rng.below(c + 1, D);
            } else if (t.cls == PhotonClass::kB) {
                const int G = tables.n_gamma[j];
                const int last = G + tables.n_delta[j] - 1;
                for (int s = 0; s <= last; s++) {
                    GateEvent e = t.gates[s];
                    if (has_x_part(e) && s != last) {
                        ex[j]++;
                    }
                    if (has_z_part(e)) {
                        ez[j]++;
                    }
                }
                if (t.readout_flip || t.dark_count) {
                    ez[j] += 1 + rng.below(c + 2, D - 1);
                }
                ex[j] = dim.mod(ex[j]);
                ez[j] = dim.mod(ez[j]);
            }
        }
        PauliOperator error(dim, ex, ez);
        rec.syndrome = circuit.decoder->syndrome_of(error);
        DecodeOutcome out = circuit.decoder->decode(rec.syndrome, rec.losses);
        rec.decoder_agrees = out.correctable && out.frame && circuit.decoder->recovers(*out.frame, error);
    }
    return rec;
}

TrialCounts run_block(const NodeCircuit& circuit, const OracleTables& tables, const CorrectabilityBudget& budget,
                      const ErrorParams& p, double u, std::uint64_t seed, std::uint64_t begin, std::uint64_t end,
                      bool check_decoder) {
    TrialCounts c;
    for (std::uint64_t t = begin; t < end; t++) {
        TrialRecord rec = run_trial(circuit, tables, budget, p, u, seed, t, check_decoder);
        if (rec.outcome != DecodeResult::kUncorrectable) {
            c.successes++;
            c.alias += rec.outcome == DecodeResult::kSuccessViaDarkCountAlias;
            c.disagreements += !rec.decoder_agrees;
        }
    }
    return c;
}

std::uint64_t point_seed(std::uint64_t seed, std::size_t index) {
    return splitmix64(seed ^ splitmix64(0xC0FFEEull + index));
}

nlohmann::json finite_or_null(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return nullptr;
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
    return splitmix64(splitmix64(splitmix64(seed_) ^ trial_) ^ counter);
}

double CounterRng::uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

int CounterRng::below(std::uint64_t counter, int bound) const {
    if (bound <= 1) {
        return 0;
    }
    return static_cast<int>(bits(counter) % static_cast<std::uint64_t>(bound));
}

const char* gate_event_name(GateEvent e) {
    switch (e) {
        case GateEvent::kOk:
            return "ok";
        case GateEvent::kX:
            return "X";
        case GateEvent::kY:
            return "Y";
        case GateEvent::kZ:
            return "Z";
        case GateEvent::kLoss:
            return "loss";
        case GateEvent::kSkipped:
            return "skipped";
    }
    return "?";
}

const char* photon_class_name(PhotonClass c) {
    switch (c) {
        case PhotonClass::kA:
            return "A";
        case PhotonClass::kB:
            return "B";
        case PhotonClass::kC:
            return "C";
        case PhotonClass::kFatal:
            return "fatal";
    }
    return "?";
}

const char* decode_result_name(DecodeResult r) {
    switch (r) {
        case DecodeResult::kSuccess:
            return "success";
        case DecodeResult::kSuccessViaDarkCountAlias:
            return "success-via-dark-count-alias";
        case DecodeResult::kUncorrectable:
            return "uncorrectable";
    }
    return "?";
}

TrialRecord simulate_trial(const NodeCircuit& circuit, const ErrorParams& params, double u, std::uint64_t seed,
                           std::uint64_t trial, bool check_decoder) {
    OracleTables tables = build_tables(circuit);
    return run_trial(circuit, tables, correctability_budget(circuit.code), params, u, seed, trial, check_decoder);
}

McResult simulate_node(const NodeCircuit& circuit, const ErrorParams& params, double u, std::uint64_t trials,
                       const McOptions& options) {
    if (trials < 1) {
        throw std::invalid_argument("trials must be at least 1");
    }
    if (!(u > 0.0 && u <= 1.0)) {
        throw std::invalid_argument("u must lie in (0, 1]");
    }
    params.validate();
    OracleTables tables = build_tables(circuit);
    CorrectabilityBudget budget = correctability_budget(circuit.code);

    unsigned workers = std::max(1u, options.workers);
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));
    std::vector<TrialCounts> partial(workers);
    auto block_begin = [&](unsigned w) { return trials * w / workers; };
    if (workers == 1) {
        partial[0] = run_block(circuit, tables, budget, params, u, options.seed, 0, trials, options.check_decoder);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; w++) {
            pool.emplace_back([&, w] {
                partial[w] = run_block(circuit, tables, budget, params, u, options.seed, block_begin(w),
                                       block_begin(w + 1), options.check_decoder);
            });
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    McResult res;
    res.trials = trials;
    for (const auto& c : partial) {
        res.successes += c.successes;
        res.alias_successes += c.alias;
        res.decoder_disagreements += c.disagreements;
    }
    res.success_rate = static_cast<double>(res.successes) / static_cast<double>(trials);
    res.std_error = std::sqrt(res.success_rate * (1.0 - res.success_rate) / static_cast<double>(trials));
    for (std::uint64_t t = 0; t < std::min<std::uint64_t>(options.trace_sample, trials); t++) {
        res.traces.push_back(run_trial(circuit, tables, budget, params, u, options.seed, t, true));
    }
    return res;
}

double CrossValidationReport::fraction_within() const {
    if (points.empty()) {
        return 1.0;
    }
    return 1.0 - static_cast<double>(violations) / static_cast<double>(points.size());
}

CrossValidationReport cross_validate(const NodeCircuit& circuit, const ErrorParams& params,
                                     const PerformancePolynomial& S, const std::vector<double>& u_grid,
                                     std::uint64_t trials_per_point, const McOptions& options) {
    CrossValidationReport report;
    report.code_name = circuit.code.name;
    report.params = params;
    report.trials_per_point = trials_per_point;
    report.seed = options.seed;
    report.classification_notes = {
        "gate errors and losses act after the gate that produced them",
        "outgoing-side gate errors are unlocated; outgoing-side loss is located",
        "an X or Y left on an incoming photon before another incoming gate kicks a matter qudit: node fails",
        "a loss between two incoming gates leaves a partial syndrome: node fails",
        "an X after the last incoming gate is harmless; a loss there is located",
        "a dark count on an arrived photon is benign with probability 1/D unless an outgoing-side X or Y occurred",
        "a dark count with no photon present is an unlocated error",
        "sigma is the binomial standard error at the analytic value",
    };
    for (std::size_t i = 0; i < u_grid.size(); i++) {
        McOptions opt = options;
        opt.seed = point_seed(options.seed, i);
        opt.trace_sample = 0;
        McResult mc = simulate_node(circuit, params, u_grid[i], trials_per_point, opt);
        CrossValidationPoint pt;
        pt.u = u_grid[i];
        pt.analytic = S(pt.u);
        pt.mc = mc.success_rate;
        pt.sigma = std::sqrt(std::max(0.0, pt.analytic * (1.0 - pt.analytic)) / static_cast<double>(trials_per_point));
        double diff = std::abs(pt.mc - pt.analytic);
        if (pt.sigma > 0.0) {
            pt.deviation_sigmas = diff / pt.sigma;
            pt.violation = pt.deviation_sigmas > 3.0;
        } else {
            pt.deviation_sigmas = diff > 1e-12 ? std::numeric_limits<double>::infinity() : 0.0;
            pt.violation = diff > 1e-12;
        }
        pt.decoder_disagreements = mc.decoder_disagreements;
        if (pt.violation && options.trace_sample > 0) {
            OracleTables tables = build_tables(circuit);
            CorrectabilityBudget budget = correctability_budget(circuit.code);
            for (std::uint64_t t = 0; t < std::min<std::uint64_t>(options.trace_sample, trials_per_point); t++) {
                pt.traces.push_back(run_trial(circuit, tables, budget, params, pt.u, opt.seed, t, true));
            }
        }
        report.violations += pt.violation;
        report.points.push_back(std::move(pt));
    }
    return report;
}

std::vector<double> default_u_grid(std::size_t points, double span) {
    if (points < 2) {
        return {1.0};
    }
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; i++) {
        grid[i] = 1.0 - static_cast<double>(points - 1 - i) * span / static_cast<double>(points - 1);
    }
    return grid;
}

nlohmann::json to_json(const TrialRecord& r) {
    nlohmann::json photons = nlohmann::json::array();
    for (const auto& t : r.photons) {
        std::vector<std::string> gates;
        for (GateEvent e : t.gates) {
            gates.emplace_back(gate_event_name(e));
        }
        photons.push_back({{"created", t.created},
                           {"gates", gates},
                           {"transmitted", t.transmitted},
                           {"null", t.null_result},
                           {"flip", t.readout_flip},
                           {"dark_count", t.dark_count},
                           {"dark_count_benign", t.dark_count_benign},
                           {"class", photon_class_name(t.cls)}});
    }
    std::vector<int> losses(r.losses.begin(), r.losses.end());
    return {{"seed", r.seed},
            {"trial", r.trial},
            {"photons", photons},
            {"syndrome", r.syndrome},
            {"losses", losses},
            {"unlocated", r.unlocated},
            {"located", r.located},
            {"outcome", decode_result_name(r.outcome)},
            {"decoder_agrees", r.decoder_agrees}};
}

nlohmann::json to_json(const McResult& r) {
    nlohmann::json traces = nlohmann::json::array();
    for (const auto& t : r.traces) {
        traces.push_back(to_json(t));
    }
    return {{"trials", r.trials},
            {"successes", r.successes},
            {"alias_successes", r.alias_successes},
            {"decoder_disagreements", r.decoder_disagreements},
            {"success_rate", r.success_rate},
            {"std_error", r.std_error},
            {"traces", traces}};
}

nlohmann::json to_json(const CrossValidationReport& r) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : r.points) {
        nlohmann::json traces = nlohmann::json::array();
        for (const auto& t : p.traces) {
            traces.push_back(to_json(t));
        }
        points.push_back({{"u", p.u},
                          {"analytic", p.analytic},
                          {"mc", p.mc},
                          {"sigma", p.sigma},
                          {"deviation_sigmas", finite_or_null(p.deviation_sigmas)},
                          {"violation", p.violation},
                          {"decoder_disagreements", p.decoder_disagreements},
                          {"traces", traces}});
    }
    return {{"code", r.code_name},
            {"params", to_json(r.params)},
            {"trials_per_point", r.trials_per_point},
            {"seed", r.seed},
            {"violations", r.violations},
            {"fraction_within", r.fraction_within()},
            {"points", points},
            {"classification_notes", r.classification_notes}};
}

}  // namespace srep
