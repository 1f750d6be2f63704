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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "srep/cli.hpp"
#include "srep/mc_oracle.hpp"
#include "srep/performance.hpp"

namespace py = pybind11;
using namespace srep;

namespace {

py::dict code_summary(const StabilizerCode& c) {
    py::dict d;
    d["name"] = c.name;
    d["n"] = c.n;
    d["k"] = c.k;
    d["d"] = c.d;
    d["dim"] = c.dim.value();
    return d;
}

NodeCircuit circuit_for(const std::string& code, bool emission_first) {
    return build_node_circuit(resolve_code(code), CircuitOptions{emission_first});
}

py::dict result_dict(const OptimizationResult& r) {
    py::dict d;
    d["u_star"] = r.u_star;
    d["eta"] = r.eta;
    d["R"] = r.R;
    d["p_tot"] = r.p_tot;
    d["node_count"] = r.node_count;
    d["node_count_ceil"] = r.node_count_ceil;
    d["effective_attenuation"] = r.effective_attenuation;
    d["infinite_range"] = r.infinite_range;
    d["above_threshold"] = r.above_threshold;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Serialized quantum repeater performance model";

    py::class_<ErrorParams>(m, "ErrorParams")
        .def(py::init<>())
        .def_readwrite("p_c", &ErrorParams::p_c)
        .def_readwrite("p_g", &ErrorParams::p_g)
        .def_readwrite("p_x", &ErrorParams::p_x)
        .def_readwrite("p_y", &ErrorParams::p_y)
        .def_readwrite("p_z", &ErrorParams::p_z)
        .def_readwrite("p_m", &ErrorParams::p_m)
        .def_readwrite("p_f", &ErrorParams::p_f)
        .def_readwrite("p_dc", &ErrorParams::p_dc)
        .def_readwrite("alpha", &ErrorParams::alpha)
        .def("validate", &ErrorParams::validate)
        .def("__repr__", [](const ErrorParams& p) { return "ErrorParams(" + to_json(p).dump() + ")"; });

    m.def(
        "preset", [](const std::string& name, const std::vector<double>& knobs) {
            return resolve_preset(preset_by_name(name), knobs);
        },
        py::arg("name"), py::arg("knobs"));

    m.def("builtin_codes", [] {
        py::list out;
        for (const auto& c : builtin_codes()) {
            out.append(code_summary(c));
        }
        return out;
    });

    m.def(
        "validate_code", [](const std::string& code) {
            ValidationReport r = validate(resolve_code(code));
            py::dict d;
            d["valid"] = r.valid;
            d["violations"] = r.violations;
            d["distance"] = r.established_distance;
            return d;
        },
        py::arg("code"));

    m.def(
        "gate_counts", [](const std::string& code, bool emission_first) {
            NodeCircuit c = circuit_for(code, emission_first);
            py::dict d;
            d["n_gamma"] = c.n_gamma;
            d["n_delta"] = c.n_delta;
            d["matter_qudits"] = c.matter_qudit_total;
            d["encoding_elements"] = c.encoding_elements;
            return d;
        },
        py::arg("code"), py::arg("emission_first") = false);

    py::class_<PerformancePolynomial>(m, "PerformancePolynomial")
        .def("__call__", &PerformancePolynomial::operator(), py::arg("u"))
        .def("slope", [](const PerformancePolynomial& S, double u) { return S.value_and_slope(u).second; })
        .def_property_readonly("coefficients",
                               [](const PerformancePolynomial& S) {
                                   auto c = S.s.coefficients();
                                   return std::vector<double>(c.begin(), c.end());
                               })
        .def_readonly("code_name", &PerformancePolynomial::code_name);

    m.def(
        "assemble_S", [](const std::string& code, const ErrorParams& p, bool emission_first) {
            return assemble_S(circuit_for(code, emission_first), p);
        },
        py::arg("code"), py::arg("params"), py::arg("emission_first") = false);

    m.def(
        "threshold", [](const PerformancePolynomial& S) {
            ThresholdResult t = threshold_check(S);
            py::dict d;
            d["status"] = threshold_status_name(t.status);
            d["witness_u"] = t.witness_u;
            d["max_margin"] = t.max_margin;
            return d;
        },
        py::arg("S"));

    m.def(
        "optimize", [](const PerformancePolynomial& S, double p_tot) { return result_dict(optimize(S, p_tot)); },
        py::arg("S"), py::arg("p_tot") = 0.1);

    m.def(
        "approx", [](const PerformancePolynomial& S, double p_tot) {
            ApproxResult a = approx_range_and_density(S, p_tot);
            py::dict d;
            d["valid"] = a.status == ApproxStatus::kValid;
            d["R"] = a.R;
            d["eta"] = a.eta;
            d["radicand"] = a.radicand;
            return d;
        },
        py::arg("S"), py::arg("p_tot") = 0.1);

    m.def(
        "simulate_node",
        [](const std::string& code, const ErrorParams& p, double u, std::uint64_t trials, std::uint64_t seed,
           unsigned workers) {
            McOptions opt;
            opt.seed = seed;
            opt.workers = workers;
            McResult r;
            {
                py::gil_scoped_release release;
                r = simulate_node(circuit_for(code, false), p, u, trials, opt);
            }
            py::dict d;
            d["trials"] = r.trials;
            d["successes"] = r.successes;
            d["success_rate"] = r.success_rate;
            d["std_error"] = r.std_error;
            d["decoder_disagreements"] = r.decoder_disagreements;
            return d;
        },
        py::arg("code"), py::arg("params"), py::arg("u"), py::arg("trials"), py::arg("seed") = 1,
        py::arg("workers") = 1);

    m.def(
        "table1", [](double joint_rate, bool emission_first) {
            py::list out;
            for (const auto& t : table1(joint_rate, emission_first)) {
                py::dict d = result_dict(t.result);
                d["code"] = t.code;
                d["matter_qudits"] = t.matter_qudits;
                d["encoding_elements"] = t.encoding_elements;
                d["ebit_rate_ghz"] = t.ebit_rate_ghz;
                out.append(d);
            }
            return out;
        },
        py::arg("joint_rate") = 1e-3, py::arg("emission_first") = false);

    m.def(
        "run_cli", [](const std::vector<std::string>& args) {
            std::vector<std::string> argv = {"serial_repeater"};
            argv.insert(argv.end(), args.begin(), args.end());
            std::ostringstream out, err;
            int code = run_cli(argv, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
