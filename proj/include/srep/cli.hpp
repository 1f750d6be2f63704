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

#ifndef SREP_CLI_HPP
#define SREP_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "srep/code_library.hpp"
#include "srep/error_model.hpp"
#include "srep/performance.hpp"

namespace srep {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitValidation = 2,
    kExitAboveThreshold = 3,
};

/// Entry point of the command-line tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 12 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double v);

/// Resolves a builtin alias or a code-definition file path.
StabilizerCode resolve_code(const std::string& name_or_path);

/// Clock period of one photon gate, in seconds.
inline constexpr double kPhotonGateSeconds = 100e-12;

/// Time slots one codeword block occupies in the serialized schedule: its n
/// photon gates on each matter qudit plus one slot for the matter readout.
int schedule_slots(const StabilizerCode& code);

/// Ebit rate in GHz at P_tot = 1: one block per schedule length.
double ebit_rate_ghz(const StabilizerCode& code);

struct Table1Row {
    std::string code;
    int n = 0;
    int k = 0;
    int d = 0;
    int dim = 2;
    int matter_qudits = 0;
    int encoding_elements = 0;
    int schedule_slots = 0;
    double ebit_rate_ghz = 0.0;
    OptimizationResult result;
};

std::vector<Table1Row> table1(double joint_rate, bool emission_first = false);

}  // namespace srep

#endif
