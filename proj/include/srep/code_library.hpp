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

#ifndef SREP_CODE_LIBRARY_HPP
#define SREP_CODE_LIBRARY_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "srep/linalg_mod.hpp"
#include "srep/qudit_algebra.hpp"

namespace srep {

/// An [[n,k,d]]_D CSS stabilizer code. Generators are pure X-type or pure
/// Z-type; logical_x[j] and logical_z[j] form the j-th logical pair.
struct StabilizerCode {
    std::string name;
    QuditDim dim;
    int n = 0;
    int k = 0;
    int d = 0;
    std::vector<PauliOperator> x_stabilizers;
    std::vector<PauliOperator> z_stabilizers;
    std::vector<PauliOperator> logical_x;
    std::vector<PauliOperator> logical_z;

    /// Rows = X-type generators' x exponents.
    ModMatrix x_checks() const;
    /// Rows = Z-type generators' z exponents.
    ModMatrix z_checks() const;
};

/// The (l, q) pairs a distance-d code admits: l unlocated, q located errors
/// with 2l + q <= d - 1.
struct CorrectabilityBudget {
    int d = 1;
    std::vector<std::pair<int, int>> pairs;

    bool admits(int unlocated, int located) const;
    /// Largest l still admissible with `located` erasures, or -1.
    int max_unlocated(int located) const;
};

CorrectabilityBudget correctability_budget(int d);
CorrectabilityBudget correctability_budget(const StabilizerCode& code);

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> violations;
    std::vector<std::string> passed;
    /// Distance established by the check, 0 when it could not be established.
    int established_distance = 0;
    std::string distance_method;
};

/// Checks every structural invariant, then the distance: exhaustive symplectic
/// scan for n <= exhaustive_limit, classical kernel enumeration otherwise.
ValidationReport validate(const StabilizerCode& code, int exhaustive_limit = 7);

/// [[4,2,2]], [[7,1,3]], [[23,1,7]] and [[3,1,2]]_3, in that order.
const std::vector<StabilizerCode>& builtin_codes();

/// Accepts the canonical name ("[[7,1,3]]") and short aliases ("713", "steane",
/// "golay", "qutrit"). Throws std::out_of_range for unknown names.
const StabilizerCode& find_builtin(const std::string& name);

/// Builds a CSS code from check matrices. Missing logicals are filled with the
/// lowest-weight representatives, ties broken lexicographically by support.
StabilizerCode make_css_code(std::string name, int dim, int n, int k, int d, const ModMatrix& x_checks,
                             const ModMatrix& z_checks, std::optional<ModMatrix> logical_x = std::nullopt,
                             std::optional<ModMatrix> logical_z = std::nullopt);

class CodeFormatError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Parses a code-definition document. Throws CodeFormatError naming the field
/// at fault, including for non-CSS generator sets and non-prime D.
StabilizerCode load_code(const nlohmann::json& doc);
StabilizerCode load_code_text(const std::string& text);
StabilizerCode load_code_file(const std::string& path);

nlohmann::json serialize_code(const StabilizerCode& code);

}  // namespace srep

#endif
