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

#include "srep/code_library.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <tuple>

namespace srep {

namespace {

/// Calls visit(values) for every length-n vector over Z_D of the given weight,
/// in order of support (lexicographic) then values. Stops when visit returns true.
bool for_each_vector_of_weight(std::size_t n, std::size_t w, int D,
                               const std::function<bool(const std::vector<int>&)>& visit) {
    if (w > n) {
        return false;
    }
    std::vector<std::size_t> supp(w);
    for (std::size_t i = 0; i < w; i++) {
        supp[i] = i;
    }
    std::vector<int> v(n, 0);
    while (true) {
        std::vector<int> vals(w, 1);
        while (true) {
            std::fill(v.begin(), v.end(), 0);
            for (std::size_t i = 0; i < w; i++) {
                v[supp[i]] = vals[i];
            }
            if (visit(v)) {
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
        // Next combination.
        std::size_t i = w;
        while (i > 0 && supp[i - 1] == n - w + (i - 1)) {
            i--;
        }
        if (i == 0) {
            return false;
        }
        supp[i - 1]++;
        for (std::size_t j = i; j < w; j++) {
            supp[j] = supp[j - 1] + 1;
        }
    }
}

/// Row-reduced basis used for fast span-membership tests.
struct SpanTester {
    ModMatrix rref;
    std::vector<std::size_t> pivots;
    QuditDim dim;

    SpanTester(ModMatrix rows, QuditDim d) : rref(std::move(rows)), dim(d) { pivots = row_reduce(rref, dim); }

    std::vector<int> reduce(std::vector<int> v) const {
        for (std::size_t r = 0; r < pivots.size(); r++) {
            int f = v[pivots[r]];
            if (f == 0) {
                continue;
            }
            for (std::size_t j = 0; j < v.size(); j++) {
                v[j] = dim.mod(v[j] - static_cast<long long>(f) * rref[r][j]);
            }
        }
        return v;
    }

    bool contains(const std::vector<int>& v) const {
        auto r = reduce(v);
        return std::all_of(r.begin(), r.end(), [](int x) { return x == 0; });
    }

    void add(const std::vector<int>& v) {
        rref.push_back(v);
        pivots = row_reduce(rref, dim);
    }
};

int dot_mod(const std::vector<int>& a, const std::vector<int>& b, QuditDim dim) {
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        s += static_cast<long long>(a[i]) * b[i];
    }
    return dim.mod(s);
}

std::vector<int> symplectic(const PauliOperator& p) {
    std::vector<int> v = p.x_exp();
    v.insert(v.end(), p.z_exp().begin(), p.z_exp().end());
    return v;
}

PauliOperator x_type(QuditDim dim, const std::vector<int>& x) {
    return PauliOperator(dim, x, std::vector<int>(x.size(), 0));
}

PauliOperator z_type(QuditDim dim, const std::vector<int>& z) {
    return PauliOperator(dim, std::vector<int>(z.size(), 0), z);
}

std::pair<ModMatrix, ModMatrix> lowest_weight_logicals(QuditDim dim, int n, int k, const ModMatrix& hx,
                                                       const ModMatrix& hz) {
    const int D = dim.value();
    ModMatrix lx;
    SpanTester span(hx, dim);
    for (int w = 1; w <= n && static_cast<int>(lx.size()) < k; w++) {
        for_each_vector_of_weight(n, w, D, [&](const std::vector<int>& v) {
            for (const auto& row : hz) {
                if (dot_mod(row, v, dim) != 0) {
                    return false;
                }
            }
            if (span.contains(v)) {
                return false;
            }
            lx.push_back(v);
            span.add(v);
            return static_cast<int>(lx.size()) == k;
        });
    }
    if (static_cast<int>(lx.size()) != k) {
        throw CodeFormatError("could not find " + std::to_string(k) + " independent logical X operators");
    }
    ModMatrix lz;
    for (int j = 0; j < k; j++) {
        bool found = false;
        for (int w = 1; w <= n && !found; w++) {
            found = for_each_vector_of_weight(n, w, D, [&](const std::vector<int>& v) {
                for (const auto& row : hx) {
                    if (dot_mod(row, v, dim) != 0) {
                        return false;
                    }
                }
                for (int m = 0; m < k; m++) {
                    if (dot_mod(lx[m], v, dim) != (m == j ? 1 : 0)) {
                        return false;
                    }
                }
                lz.push_back(v);
                return true;
            });
        }
        if (!found) {
            throw CodeFormatError("could not find logical Z partner for logical X " + std::to_string(j));
        }
    }
    return {lx, lz};
}

/// Minimum weight of ker(checks) outside rowspace(other); 0 if the kernel is
/// too large to enumerate or has no such element.
int classical_css_distance(const ModMatrix& checks, const ModMatrix& other, std::size_t n, QuditDim dim,
                           std::size_t max_elements) {
    ModMatrix basis = nullspace_mod(checks, n, dim);
    double count = std::pow(static_cast<double>(dim.value()), static_cast<double>(basis.size()));
    if (count > static_cast<double>(max_elements)) {
        return 0;
    }
    SpanTester rowspace(other, dim);
    int best = std::numeric_limits<int>::max();
    std::vector<int> coeff(basis.size(), 0);
    std::vector<int> v(n);
    while (true) {
        std::fill(v.begin(), v.end(), 0);
        for (std::size_t b = 0; b < basis.size(); b++) {
            if (coeff[b] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < n; j++) {
                v[j] = dim.mod(v[j] + static_cast<long long>(coeff[b]) * basis[b][j]);
            }
        }
        int w = static_cast<int>(std::count_if(v.begin(), v.end(), [](int x) { return x != 0; }));
        if (w > 0 && w < best && !rowspace.contains(v)) {
            best = w;
        }
        std::size_t i = 0;
        while (i < coeff.size() && coeff[i] == dim.value() - 1) {
            coeff[i] = 0;
            i++;
        }
        if (i == coeff.size()) {
            break;
        }
        coeff[i]++;
    }
    return best == std::numeric_limits<int>::max() ? 0 : best;
}

ModMatrix rows_of(const std::vector<PauliOperator>& ops, bool x_part) {
    ModMatrix m;
    for (const auto& p : ops) {
        m.push_back(x_part ? p.x_exp() : p.z_exp());
    }
    return m;
}

std::vector<int> cyclic_row(const std::vector<int>& exponents, std::size_t n, std::size_t shift) {
    std::vector<int> v(n, 0);
    for (int e : exponents) {
        v[(static_cast<std::size_t>(e) + shift) % n] = 1;
    }
    return v;
}

}  // namespace

ModMatrix StabilizerCode::x_checks() const { return rows_of(x_stabilizers, true); }
ModMatrix StabilizerCode::z_checks() const { return rows_of(z_stabilizers, false); }

bool CorrectabilityBudget::admits(int unlocated, int located) const {
    return unlocated >= 0 && located >= 0 && 2 * unlocated + located <= d - 1;
}

int CorrectabilityBudget::max_unlocated(int located) const {
    if (located < 0 || located > d - 1) {
        return -1;
    }
    return (d - 1 - located) / 2;
}

CorrectabilityBudget correctability_budget(int d) {
    if (d < 1) {
        throw std::invalid_argument("distance must be at least 1");
    }
    CorrectabilityBudget b;
    b.d = d;
    for (int l = 0; l <= (d - 1) / 2; l++) {
        for (int q = 0; q <= (d - 1) - 2 * l; q++) {
            b.pairs.emplace_back(l, q);
        }
    }
    return b;
}

CorrectabilityBudget correctability_budget(const StabilizerCode& code) { return correctability_budget(code.d); }

StabilizerCode make_css_code(std::string name, int dim_value, int n, int k, int d, const ModMatrix& x_checks,
                             const ModMatrix& z_checks, std::optional<ModMatrix> logical_x,
                             std::optional<ModMatrix> logical_z) {
    QuditDim dim(dim_value);
    if (n < 1 || k < 0 || d < 1) {
        throw CodeFormatError("code parameters must satisfy n >= 1, k >= 0, d >= 1");
    }
    auto check_rows = [&](const ModMatrix& m, const char* field) {
        for (const auto& row : m) {
            if (static_cast<int>(row.size()) != n) {
                throw CodeFormatError(std::string(field) + ": row length " + std::to_string(row.size()) +
                                      " does not match n = " + std::to_string(n));
            }
        }
    };
    check_rows(x_checks, "x_checks");
    check_rows(z_checks, "z_checks");
    StabilizerCode code{std::move(name), dim, n, k, d, {}, {}, {}, {}};
    for (const auto& row : x_checks) {
        code.x_stabilizers.push_back(x_type(dim, row));
    }
    for (const auto& row : z_checks) {
        code.z_stabilizers.push_back(z_type(dim, row));
    }
    if (logical_x.has_value() != logical_z.has_value()) {
        throw CodeFormatError(logical_x ? "logical_z: missing while logical_x is given"
                                        : "logical_x: missing while logical_z is given");
    }
    ModMatrix lx, lz;
    if (logical_x) {
        lx = *logical_x;
        lz = *logical_z;
        check_rows(lx, "logical_x");
        check_rows(lz, "logical_z");
        if (static_cast<int>(lx.size()) != k) {
            throw CodeFormatError("logical_x: expected " + std::to_string(k) + " operators, got " +
                                  std::to_string(lx.size()));
        }
        if (static_cast<int>(lz.size()) != k) {
            throw CodeFormatError("logical_z: expected " + std::to_string(k) + " operators, got " +
                                  std::to_string(lz.size()));
        }
    } else {
        ModMatrix hx, hz;
        for (const auto& r : x_checks) {
            hx.push_back(r);
        }
        for (const auto& r : z_checks) {
            hz.push_back(r);
        }
        std::tie(lx, lz) = lowest_weight_logicals(dim, n, k, hx, hz);
    }
    for (const auto& row : lx) {
        code.logical_x.push_back(x_type(dim, row));
    }
    for (const auto& row : lz) {
        code.logical_z.push_back(z_type(dim, row));
    }
    return code;
}

ValidationReport validate(const StabilizerCode& code, int exhaustive_limit) {
    ValidationReport rep;
    auto fail = [&](std::string msg) {
        rep.valid = false;
        rep.violations.push_back(std::move(msg));
    };
    const QuditDim dim = code.dim;
    const std::size_t n = static_cast<std::size_t>(code.n);

    std::vector<const PauliOperator*> all;
    for (const auto& p : code.x_stabilizers) {
        all.push_back(&p);
    }
    for (const auto& p : code.z_stabilizers) {
        all.push_back(&p);
    }
    for (const auto* p : all) {
        if (p->size() != n) {
            fail("generator length does not match n");
            return rep;
        }
    }

    int gens = static_cast<int>(code.x_stabilizers.size() + code.z_stabilizers.size());
    if (gens != code.n - code.k) {
        fail("generator count " + std::to_string(gens) + " != n - k = " + std::to_string(code.n - code.k));
    } else {
        rep.passed.push_back("generator count equals n - k");
    }

    bool css = true;
    for (std::size_t i = 0; i < code.x_stabilizers.size(); i++) {
        if (!code.x_stabilizers[i].is_x_type()) {
            css = false;
            fail("x_stabilizers[" + std::to_string(i) + "] is not pure X-type");
        }
    }
    for (std::size_t i = 0; i < code.z_stabilizers.size(); i++) {
        if (!code.z_stabilizers[i].is_z_type()) {
            css = false;
            fail("z_stabilizers[" + std::to_string(i) + "] is not pure Z-type");
        }
    }
    if (css) {
        rep.passed.push_back("CSS purity");
    }

    ModMatrix sym;
    for (const auto* p : all) {
        sym.push_back(symplectic(*p));
    }
    std::size_t rank = rank_mod(sym, dim);
    if (static_cast<int>(rank) != gens) {
        fail("generators are not independent (rank " + std::to_string(rank) + " of " + std::to_string(gens) + ")");
    }

    bool commute = true;
    auto label = [&](std::size_t idx) {
        std::size_t nx = code.x_stabilizers.size();
        return idx < nx ? "x_stabilizers[" + std::to_string(idx) + "]"
                        : "z_stabilizers[" + std::to_string(idx - nx) + "]";
    };
    for (std::size_t i = 0; i < all.size(); i++) {
        for (std::size_t j = i + 1; j < all.size(); j++) {
            if (commutation_phase(*all[i], *all[j]) != 0) {
                commute = false;
                fail(label(i) + " and " + label(j) + " do not commute");
            }
        }
    }
    if (commute) {
        rep.passed.push_back("stabilizer generators commute pairwise");
    }

    bool logical_ok = static_cast<int>(code.logical_x.size()) == code.k &&
                      static_cast<int>(code.logical_z.size()) == code.k;
    if (!logical_ok) {
        fail("expected " + std::to_string(code.k) + " logical X and Z operators");
    } else {
        const int unit = 1;  // commutation_phase(X, Z) on one qudit
        for (int j = 0; j < code.k; j++) {
            for (const auto* s : all) {
                if (commutation_phase(code.logical_x[j], *s) != 0 || commutation_phase(code.logical_z[j], *s) != 0) {
                    logical_ok = false;
                    fail("logical pair " + std::to_string(j) + " does not commute with every stabilizer");
                    break;
                }
            }
            for (int m = 0; m < code.k; m++) {
                int want = j == m ? unit : 0;
                if (commutation_phase(code.logical_x[j], code.logical_z[m]) != want) {
                    logical_ok = false;
                    fail("logical_x[" + std::to_string(j) + "] and logical_z[" + std::to_string(m) +
                         "] violate the Pauli commutation relation");
                }
                if (commutation_phase(code.logical_x[j], code.logical_x[m]) != 0 ||
                    commutation_phase(code.logical_z[j], code.logical_z[m]) != 0) {
                    logical_ok = false;
                    fail("logical operators of the same type do not commute");
                }
            }
        }
        if (logical_ok) {
            rep.passed.push_back("logical commutation relations");
        }
    }

    if (!rep.valid) {
        return rep;
    }

    if (code.n <= exhaustive_limit) {
        SpanTester group(sym, dim);
        int found = 0;
        for (int w = 1; w <= code.n && found == 0; w++) {
            // Each site carries a nonzero (a, b) pair: encode as one residue in [1, D^2).
            const int D = dim.value();
            for_each_vector_of_weight(n, static_cast<std::size_t>(w), D * D, [&](const std::vector<int>& v) {
                std::vector<int> x(n), z(n);
                for (std::size_t j = 0; j < n; j++) {
                    x[j] = v[j] / D;
                    z[j] = v[j] % D;
                }
                PauliOperator p(dim, x, z);
                for (const auto* s : all) {
                    if (commutation_phase(p, *s) != 0) {
                        return false;
                    }
                }
                if (group.contains(symplectic(p))) {
                    return false;
                }
                found = w;
                return true;
            });
        }
        rep.established_distance = found;
        rep.distance_method = "exhaustive symplectic scan";
    } else {
        const std::size_t limit = std::size_t{1} << 22;
        ModMatrix hx = code.x_checks();
        ModMatrix hz = code.z_checks();
        int dx = classical_css_distance(hz, hx, n, dim, limit);
        int dz = classical_css_distance(hx, hz, n, dim, limit);
        if (dx > 0 && dz > 0) {
            rep.established_distance = std::min(dx, dz);
            rep.distance_method = "classical kernel enumeration";
        } else {
            rep.distance_method = "not established (kernel too large)";
        }
    }
    if (rep.established_distance == code.d) {
        rep.passed.push_back("distance " + std::to_string(code.d) + " (" + rep.distance_method + ")");
    } else if (rep.established_distance != 0) {
        fail("declared distance " + std::to_string(code.d) + " but " + rep.distance_method + " finds " +
             std::to_string(rep.established_distance));
    }
    return rep;
}

const std::vector<StabilizerCode>& builtin_codes() {
    static const std::vector<StabilizerCode> codes = [] {
        std::vector<StabilizerCode> out;
        out.push_back(make_css_code("[[4,2,2]]", 2, 4, 2, 2, {{1, 1, 1, 1}}, {{1, 1, 1, 1}}));

        ModMatrix hamming = {{1, 0, 1, 0, 1, 0, 1}, {0, 1, 1, 0, 0, 1, 1}, {0, 0, 0, 1, 1, 1, 1}};
        out.push_back(make_css_code("[[7,1,3]]", 2, 7, 1, 3, hamming, hamming));

        // Golay generator g(x) = 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11. The
        // dual of the [23,12,7] code is its even-weight subcode, generated by
        // (1 + x) g(x); its 11 cyclic shifts form the parity-check matrix.
        const std::vector<int> g = {0, 2, 4, 5, 6, 10, 11};
        std::vector<int> coeff(13, 0);
        for (int e : g) {
            coeff[e] ^= 1;
            coeff[e + 1] ^= 1;
        }
        std::vector<int> dual_gen;
        for (int e = 0; e < 13; e++) {
            if (coeff[e]) {
                dual_gen.push_back(e);
            }
        }
        ModMatrix golay;
        for (std::size_t s = 0; s < 11; s++) {
            golay.push_back(cyclic_row(dual_gen, 23, s));
        }
        out.push_back(make_css_code("[[23,1,7]]", 2, 23, 1, 7, golay, golay));

        out.push_back(make_css_code("[[3,1,2]]_3", 3, 3, 1, 2, {{1, 1, 1}}, {{1, 1, 1}}));
        return out;
    }();
    return codes;
}

const StabilizerCode& find_builtin(const std::string& name) {
    std::string key;
    for (char c : name) {
        if (c != '[' && c != ']' && c != ',' && c != '_' && c != ' ') {
            key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    const auto& codes = builtin_codes();
    if (key == "422") {
        return codes[0];
    }
    if (key == "713" || key == "steane") {
        return codes[1];
    }
    if (key == "2317" || key == "golay") {
        return codes[2];
    }
    if (key == "3123" || key == "312" || key == "qutrit") {
        return codes[3];
    }
    throw std::out_of_range("unknown code '" + name + "'");
}

StabilizerCode load_code(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw CodeFormatError("code definition must be a JSON object");
    }
    auto require = [&](const char* field) -> const nlohmann::json& {
        if (!doc.contains(field)) {
            throw CodeFormatError(std::string(field) + ": missing required field");
        }
        return doc.at(field);
    };
    auto matrix = [&](const nlohmann::json& j, const char* field) {
        try {
            return j.get<ModMatrix>();
        } catch (const nlohmann::json::exception&) {
            throw CodeFormatError(std::string(field) + ": expected a matrix of integers");
        }
    };
    auto integer = [&](const char* field) {
        const auto& j = require(field);
        if (!j.is_number_integer()) {
            throw CodeFormatError(std::string(field) + ": expected an integer");
        }
        return j.get<int>();
    };
    std::string name = doc.value("name", std::string("unnamed"));
    int dim = integer("D");
    if (!is_prime(dim)) {
        throw CodeFormatError("D: dimension " + std::to_string(dim) + " is not prime");
    }
    int n = integer("n");
    int k = integer("k");
    int d = integer("d");

    ModMatrix x_checks, z_checks;
    if (doc.contains("stabilizers")) {
        // Generic generator list: each entry {"x": [...], "z": [...]}.
        const auto& gens = doc.at("stabilizers");
        for (std::size_t i = 0; i < gens.size(); i++) {
            auto x = gens[i].value("x", std::vector<int>(static_cast<std::size_t>(n), 0));
            auto z = gens[i].value("z", std::vector<int>(static_cast<std::size_t>(n), 0));
            bool has_x = std::any_of(x.begin(), x.end(), [dim](int v) { return v % dim != 0; });
            bool has_z = std::any_of(z.begin(), z.end(), [dim](int v) { return v % dim != 0; });
            if (has_x && has_z) {
                throw CodeFormatError("stabilizers[" + std::to_string(i) +
                                      "]: mixed X/Z generator; only CSS codes are supported");
            }
            (has_x ? x_checks : z_checks).push_back(has_x ? x : z);
        }
    } else {
        x_checks = matrix(require("x_checks"), "x_checks");
        z_checks = matrix(require("z_checks"), "z_checks");
    }

    std::optional<ModMatrix> lx, lz;
    if (doc.contains("logical_x")) {
        lx = matrix(doc.at("logical_x"), "logical_x");
    }
    if (doc.contains("logical_z")) {
        lz = matrix(doc.at("logical_z"), "logical_z");
    }
    StabilizerCode code = make_css_code(name, dim, n, k, d, x_checks, z_checks, lx, lz);
    ValidationReport rep = validate(code);
    if (!rep.valid) {
        std::string msg = "code '" + name + "' failed validation:";
        for (const auto& v : rep.violations) {
            msg += " " + v + ";";
        }
        throw CodeFormatError(msg);
    }
    return code;
}

StabilizerCode load_code_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw CodeFormatError(std::string("parse error: ") + e.what());
    }
    return load_code(doc);
}

StabilizerCode load_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw CodeFormatError("cannot open code file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return load_code_text(buf.str());
}

nlohmann::json serialize_code(const StabilizerCode& code) {
    nlohmann::json doc;
    doc["name"] = code.name;
    doc["D"] = code.dim.value();
    doc["n"] = code.n;
    doc["k"] = code.k;
    doc["d"] = code.d;
    doc["x_checks"] = code.x_checks();
    doc["z_checks"] = code.z_checks();
    doc["logical_x"] = rows_of(code.logical_x, true);
    doc["logical_z"] = rows_of(code.logical_z, false);
    return doc;
}

}  // namespace srep
