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

#ifndef SREP_MC_ORACLE_HPP
#define SREP_MC_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "srep/error_model.hpp"
#include "srep/node_circuit.hpp"
#include "srep/performance.hpp"

namespace srep {

/// Stateless generator: every draw is a hash of (seed, trial, counter), so a
/// trial's stream does not depend on which worker runs it.
class CounterRng {
   public:
    CounterRng(std::uint64_t seed, std::uint64_t trial) : seed_(seed), trial_(trial) {}

    std::uint64_t bits(std::uint64_t counter) const;
    /// Uniform in [0, 1).
    double uniform(std::uint64_t counter) const;
    /// Uniform in [0, bound).
    int below(std::uint64_t counter, int bound) const;

   private:
    std::uint64_t seed_;
    std::uint64_t trial_;
};

enum class GateEvent : std::uint8_t { kOk, kX, kY, kZ, kLoss, kSkipped };

const char* gate_event_name(GateEvent e);

/// Per-photon outcome class: A clean, B unlocated error, C located loss,
/// F an error that corrupts the shared matter qudits.
enum class PhotonClass : std::uint8_t { kA, kB, kC, kFatal };

const char* photon_class_name(PhotonClass c);

struct PhotonTrace {
    bool created = false;
    /// Outgoing slots first, then incoming slots, in execution order.
    std::vector<GateEvent> gates;
    bool transmitted = false;
    bool null_result = false;
    bool readout_flip = false;
    bool dark_count = false;
    bool dark_count_benign = false;
    PhotonClass cls = PhotonClass::kA;
};

enum class DecodeResult : std::uint8_t { kSuccess, kSuccessViaDarkCountAlias, kUncorrectable };

const char* decode_result_name(DecodeResult r);

struct TrialRecord {
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::vector<PhotonTrace> photons;
    std::vector<int> syndrome;
    std::vector<bool> losses;
    int unlocated = 0;
    int located = 0;
    DecodeResult outcome = DecodeResult::kUncorrectable;
    /// Frame returned by the decoder recovers the injected error; only
    /// meaningful when outcome is a success.
    bool decoder_agrees = true;
};

/// One trial. `check_decoder` runs the lookup decoder on the sampled error
/// pattern of every successful trial and records whether it recovers it.
TrialRecord simulate_trial(const NodeCircuit& circuit, const ErrorParams& params, double u, std::uint64_t seed,
                           std::uint64_t trial, bool check_decoder);

struct McOptions {
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::size_t trace_sample = 0;
    bool check_decoder = true;
};

struct McResult {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t alias_successes = 0;
    std::uint64_t decoder_disagreements = 0;
    double success_rate = 0.0;
    double std_error = 0.0;
    std::vector<TrialRecord> traces;
};

McResult simulate_node(const NodeCircuit& circuit, const ErrorParams& params, double u, std::uint64_t trials,
                       const McOptions& options = {});

struct CrossValidationPoint {
    double u = 0.0;
    double analytic = 0.0;
    double mc = 0.0;
    /// Binomial sigma at the analytic value.
    double sigma = 0.0;
    double deviation_sigmas = 0.0;
    bool violation = false;
    std::uint64_t decoder_disagreements = 0;
    std::vector<TrialRecord> traces;
};

struct CrossValidationReport {
    std::string code_name;
    ErrorParams params;
    std::uint64_t trials_per_point = 0;
    std::uint64_t seed = 0;
    std::vector<CrossValidationPoint> points;
    std::size_t violations = 0;
    std::vector<std::string> classification_notes;

    double fraction_within() const;
};

/// Compares the sampled success rate to S(u) at every grid point; points more
/// than three binomial sigmas away are violations.
CrossValidationReport cross_validate(const NodeCircuit& circuit, const ErrorParams& params,
                                     const PerformancePolynomial& S, const std::vector<double>& u_grid,
                                     std::uint64_t trials_per_point, const McOptions& options = {});

/// n evenly spaced points ending at 1: 1 - (n-1-i) * span / (n-1).
std::vector<double> default_u_grid(std::size_t points = 21, double span = 0.5);

nlohmann::json to_json(const TrialRecord& r);
nlohmann::json to_json(const McResult& r);
nlohmann::json to_json(const CrossValidationReport& r);

}  // namespace srep

#endif
