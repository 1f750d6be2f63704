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

#ifndef SREP_NODE_CIRCUIT_HPP
#define SREP_NODE_CIRCUIT_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "srep/code_library.hpp"

namespace srep {

/// One photon-matter CPHASE^power interaction.
struct PhotonGate {
    std::size_t photon = 0;
    int power = 0;
};

enum class Stage { kEncoding, kOutgoingEntangle, kIncomingEntangle, kQndStabilizer };

const char* stage_name(Stage s);

/// All gates one matter qudit (or emitter) performs, in photon-index order.
struct MatterSchedule {
    Stage stage;
    std::string label;
    std::vector<PhotonGate> gates;
    /// R^-1 ... R on the matter qudit around the gates (incoming Z-bar^C).
    bool r_on_matter = false;
};

/// Where a photon meets a gate: the stage and the schedule index in it.
struct GateSlot {
    Stage stage;
    std::size_t schedule = 0;
    int power = 0;
};

/// Per-code lookup decoder for the two CSS halves plus erasure solving.
class SyndromeDecoder;

struct CircuitOptions {
    /// Treat each photon's first encoding interaction as its emission from that
    /// encoding element rather than as a separate gate. Off by default.
    bool emission_is_first_encoding_gate = false;
};

struct NodeCircuit {
    StabilizerCode code;
    std::vector<MatterSchedule> encoding_rows;
    std::vector<MatterSchedule> outgoing_entangle;
    std::vector<MatterSchedule> incoming_entangle;
    std::vector<MatterSchedule> qnd_stabilizers;
    std::vector<PauliOperator> cheap_stabilizers;
    int r = 0;
    /// False when r != (n - k) / 2; the circuit is still usable.
    bool balanced_split = true;
    std::vector<std::string> notes;

    /// Gate slots per photon in execution order; outgoing_slots covers
    /// preparation + outgoing entanglement, incoming_slots the rest.
    std::vector<std::vector<GateSlot>> outgoing_slots;
    std::vector<std::vector<GateSlot>> incoming_slots;
    std::vector<int> n_gamma;
    std::vector<int> n_delta;
    int matter_qudit_total = 0;
    int encoding_elements = 0;
    CircuitOptions options;

    std::shared_ptr<const SyndromeDecoder> decoder;

    std::size_t photons() const { return n_gamma.size(); }
};

NodeCircuit build_node_circuit(const StabilizerCode& code, CircuitOptions options = {});

struct StageTotals {
    int encoding = 0;
    int outgoing_entangle = 0;
    int incoming_entangle = 0;
    int qnd = 0;
};

struct GateCountReport {
    std::string code_name;
    std::vector<int> n_gamma;
    std::vector<int> n_delta;
    StageTotals totals;
    int matter_qudit_total = 0;
    int encoding_elements = 0;
    int r = 0;
};

GateCountReport gate_count_report(const NodeCircuit& circuit);
nlohmann::json to_json(const GateCountReport& report);
/// Stage lists + gate counts.
nlohmann::json circuit_to_json(const NodeCircuit& circuit);

struct DecodeOutcome {
    bool correctable = false;
    /// Pauli-frame update to apply when correctable.
    std::optional<PauliOperator> frame;
    /// Support size of the frame off the located set.
    int unlocated_weight = 0;
};

class SyndromeDecoder {
   public:
    explicit SyndromeDecoder(const StabilizerCode& code);

    /// Syndrome layout: one residue per Z-type generator (the QND stage) then
    /// one per X-type generator (the destructive stage). Z-type rows read the
    /// error's X-part, X-type rows read its Z-part.
    std::vector<int> syndrome_of(const PauliOperator& error) const;

    DecodeOutcome decode(const std::vector<int>& syndrome, const std::vector<bool>& losses) const;

    /// True when frame and error differ by a stabilizer element.
    bool recovers(const PauliOperator& frame, const PauliOperator& error) const;

   private:
    struct Half {
        ModMatrix checks;
        /// Min-weight error per syndrome index (base-D digits), weight <= t.
        std::vector<std::optional<std::vector<int>>> table;
    };

    std::optional<std::vector<int>> decode_half(const Half& half, const std::vector<int>& syndrome,
                                                const std::vector<bool>& losses, int max_unlocated) const;

    StabilizerCode code_;
    Half x_errors_;  // detected by Z-type checks
    Half z_errors_;  // detected by X-type checks
    CorrectabilityBudget budget_;
};

/// Decision rule: minimum-weight explanation of the syndrome whose support off
/// the located set is small enough for the located count.
DecodeOutcome syndrome_decode(const NodeCircuit& circuit, const std::vector<int>& syndrome,
                              const std::vector<bool>& losses);

}  // namespace srep

#endif
