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

#include "srep/cli.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "srep/mc_oracle.hpp"
#include "srep/node_circuit.hpp"

namespace srep {

namespace {

using Row = nlohmann::ordered_json;

Row num(double v) {
    if (std::isnan(v)) {
        return nullptr;
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    return std::stod(format_number(v));
}

std::string csv_cell(const Row& v) {
    if (v.is_null()) {
        return "nan";
    }
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") != std::string::npos) {
            std::string q = "\"";
            for (char c : s) {
                q += c;
                if (c == '"') {
                    q += '"';
                }
            }
            return q + "\"";
        }
        return s;
    }
    if (v.is_boolean()) {
        return v.get<bool>() ? "true" : "false";
    }
    if (v.is_number_integer()) {
        return std::to_string(v.get<long long>());
    }
    if (v.is_number()) {
        return format_number(v.get<double>());
    }
    return v.dump();
}

void write_csv(const std::vector<Row>& rows, std::ostream& out) {
    if (rows.empty()) {
        return;
    }
    bool first = true;
    for (const auto& item : rows.front().items()) {
        out << (first ? "" : ",") << item.key();
        first = false;
    }
    out << "\n";
    for (const auto& row : rows) {
        first = true;
        for (const auto& item : row.items()) {
            out << (first ? "" : ",") << csv_cell(item.value());
            first = false;
        }
        out << "\n";
    }
}

struct Sink {
    std::string path;
    std::ostream& fallback;

    template <typename F>
    void write(F body) const {
        if (path.empty()) {
            body(fallback);
            return;
        }
        std::ofstream f(path);
        if (!f) {
            throw std::runtime_error("cannot write '" + path + "'");
        }
        body(f);
    }
};

void emit(const Sink& sink, const std::string& format, const Row& meta, const std::vector<Row>& rows) {
    sink.write([&](std::ostream& os) {
        if (format == "json") {
            Row doc = meta;
            doc["rows"] = rows;
            os << doc.dump(2) << "\n";
        } else {
            write_csv(rows, os);
        }
    });
}

template <typename F>
void parallel_for(std::size_t count, unsigned workers, F body) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; i++) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; w++) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                body(i);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

std::vector<double> log_space(double lo, double hi, int points) {
    if (!(lo > 0.0 && hi > 0.0)) {
        throw std::invalid_argument("log spacing needs positive endpoints");
    }
    if (lo > 1.0 || hi > 1.0) {
        throw std::invalid_argument("probability ranges must lie within [0, 1]");
    }
    std::vector<double> v(points);
    for (int i = 0; i < points; i++) {
        double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        v[i] = std::pow(10.0, std::log10(lo) + t * (std::log10(hi) - std::log10(lo)));
    }
    return v;
}

/// Options shared by the commands that evaluate one error model.
struct ModelOptions {
    std::string code = "[[7,1,3]]";
    std::string preset = "fig4";
    std::string params_file;
    std::vector<double> joint_rate;
    double p_l = -1.0;
    double p_cgm = -1.0;
    bool emission_first = false;

    void attach(CLI::App* cmd, bool many_rates) {
        cmd->add_option("--code", code, "builtin code name or code-definition file")->capture_default_str();
        cmd->add_option("--preset", preset, "error-model preset")
            ->check(CLI::IsMember({"fig3", "fig4"}))
            ->capture_default_str();
        cmd->add_option("--params", params_file, "JSON file of error probabilities (overrides the preset)");
        auto* jr = cmd->add_option("--joint-rate", joint_rate, "fig4 joint error rate")->check(CLI::Range(0.0, 1.0));
        if (!many_rates) {
            jr->expected(1);
        }
        cmd->add_option("--pl", p_l, "fig3 total logical error probability")->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--pcgm", p_cgm, "fig3 creation/gate-loss/null probability")->check(CLI::Range(0.0, 1.0));
        cmd->add_flag("--emission-first", emission_first,
                      "count each photon's first encoding interaction as its emission");
    }

    std::vector<double> knobs_for(const ScenarioPreset& p, double joint) const {
        if (p.kind == PresetKind::kFig4) {
            return {joint};
        }
        if (p_l < 0.0 || p_cgm < 0.0) {
            throw std::invalid_argument("preset fig3 needs --pl and --pcgm");
        }
        return {p_l, p_cgm};
    }

    ErrorParams single() const {
        if (!params_file.empty()) {
            std::ifstream f(params_file);
            if (!f) {
                throw std::invalid_argument("cannot open parameter file '" + params_file + "'");
            }
            return error_params_from_json(nlohmann::json::parse(f));
        }
        ScenarioPreset p = preset_by_name(preset);
        if (p.kind == PresetKind::kFig4 && joint_rate.size() != 1) {
            throw std::invalid_argument("preset fig4 needs one --joint-rate");
        }
        return resolve_preset(p, knobs_for(p, joint_rate.empty() ? 0.0 : joint_rate.front()));
    }

    CircuitOptions circuit_options() const { return CircuitOptions{emission_first}; }
};

Row code_row(const StabilizerCode& code) {
    NodeCircuit c = build_node_circuit(code);
    Row r;
    r["code"] = code.name;
    r["n"] = code.n;
    r["k"] = code.k;
    r["d"] = code.d;
    r["D"] = code.dim.value();
    r["matter_qudits"] = c.matter_qudit_total;
    r["encoding_elements"] = c.encoding_elements;
    return r;
}

Row result_row(const OptimizationResult& r) {
    Row row;
    row["u_star"] = num(r.u_star);
    row["eta"] = num(r.eta);
    row["R"] = r.above_threshold ? Row(0.0) : num(r.R);
    row["node_count"] = num(r.node_count);
    row["node_count_ceil"] = r.node_count_ceil;
    row["effective_attenuation"] = num(r.effective_attenuation);
    row["infinite_range"] = r.infinite_range;
    row["above_threshold"] = r.above_threshold;
    return row;
}

Row params_row(const ErrorParams& p) {
    Row row;
    nlohmann::json doc = to_json(p);
    for (const auto& item : doc.items()) {
        row[item.key()] = num(item.value().get<double>());
    }
    return row;
}

int cmd_codes_list(const std::string& format, const Sink& sink) {
    std::vector<Row> rows;
    for (const auto& code : builtin_codes()) {
        rows.push_back(code_row(code));
    }
    emit(sink, format, Row{{"command", "codes list"}}, rows);
    return kExitOk;
}

int cmd_codes_validate(const std::string& target, const Sink& sink, std::ostream& err) {
    StabilizerCode code;
    try {
        code = resolve_code(target);
    } catch (const CodeFormatError& e) {
        err << "invalid code: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        err << e.what() << "\n";
        return kExitValidation;
    }
    ValidationReport rep = validate(code);
    Row doc;
    doc["code"] = code.name;
    doc["valid"] = rep.valid;
    doc["passed"] = rep.passed;
    doc["violations"] = rep.violations;
    doc["established_distance"] = rep.established_distance;
    doc["distance_method"] = rep.distance_method;
    sink.write([&](std::ostream& os) { os << doc.dump(2) << "\n"; });
    return rep.valid ? kExitOk : kExitValidation;
}

struct SweepOptions {
    double p_tot = 0.1;
    int grid = 10;
    double lo = 1e-5;
    double hi = 1e-1;
    double r_max = 30.0;
};

int cmd_sweep(const ModelOptions& model, const SweepOptions& sw, unsigned workers, const std::string& format,
              const Sink& sink) {
    StabilizerCode code = resolve_code(model.code);
    NodeCircuit circuit = build_node_circuit(code, model.circuit_options());
    ScenarioPreset preset = preset_by_name(model.preset);
    double rate = static_cast<double>(code.k) / code.n;
    std::vector<Row> rows;
    std::size_t above = 0;
    std::size_t evaluated = 0;
    Row meta{{"command", "sweep"}, {"preset", preset.name}, {"code", code.name}, {"p_tot", num(sw.p_tot)}};

    if (preset.kind == PresetKind::kFig3) {
        std::vector<double> axis = log_space(sw.lo, sw.hi, sw.grid);
        std::size_t count = axis.size() * axis.size();
        rows.resize(count);
        std::vector<char> flags(count, 0);
        parallel_for(count, workers, [&](std::size_t idx) {
            double pl = axis[idx / axis.size()];
            double pcgm = axis[idx % axis.size()];
            ErrorParams p = resolve_preset(preset, {pl, pcgm});
            PerformancePolynomial S = assemble_S(circuit, p);
            OptimizationResult r = optimize(S, sw.p_tot);
            Row row;
            row["index"] = idx;
            row["p_l"] = num(pl);
            row["p_cgm"] = num(pcgm);
            row.update(result_row(r));
            row["bare_R"] = num(bare_range(sw.p_tot));
            row["effective_code_rate"] = num(r.above_threshold ? 0.0 : sw.p_tot * rate);
            rows[idx] = std::move(row);
            flags[idx] = r.above_threshold;
        });
        for (char f : flags) {
            above += f;
        }
        evaluated = count;
    } else {
        std::vector<double> rates = model.joint_rate;
        if (rates.empty()) {
            rates = {1e-2, 1e-3, 1e-4, 1e-5};
        }
        meta["bare_formula"] = "exp(-R)";
        for (double jr : rates) {
            ErrorParams p = resolve_preset(preset, {jr});
            PerformancePolynomial S = assemble_S(circuit, p);
            OptimizationResult r = optimize(S, sw.p_tot);
            above += r.above_threshold;
            evaluated++;
            double per_length = 0.0;
            if (!r.infinite_range && std::isfinite(r.effective_attenuation)) {
                per_length = 1.0 / r.effective_attenuation;
            }
            for (int i = 0; i < sw.grid; i++) {
                double R = sw.grid == 1 ? 0.0 : sw.r_max * i / (sw.grid - 1);
                double p_tot = std::exp(-R * per_length);
                Row row;
                row["joint_rate"] = num(jr);
                row["R"] = num(R);
                row["p_tot"] = num(p_tot);
                row["effective_code_rate"] = num(p_tot * rate);
                row["bare"] = num(std::exp(-R));
                row["u_star"] = num(r.u_star);
                row["eta"] = num(r.eta);
                row["above_threshold"] = r.above_threshold;
                rows.push_back(std::move(row));
            }
        }
    }
    emit(sink, format, meta, rows);
    return (evaluated > 0 && above == evaluated) ? kExitAboveThreshold : kExitOk;
}

double relative_diff(double approx, double exact) {
    if (!std::isfinite(approx) || !std::isfinite(exact) || exact == 0.0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return (approx - exact) / exact;
}

int cmd_optimize(const ModelOptions& model, double p_tot, const Sink& sink) {
    StabilizerCode code = resolve_code(model.code);
    NodeCircuit circuit = build_node_circuit(code, model.circuit_options());
    ErrorParams params = model.single();
    PerformanceRecord rec = evaluate_performance(circuit, params, p_tot);
    Row doc;
    doc["command"] = "optimize";
    doc["code"] = code.name;
    doc["params"] = params_row(params);
    doc["p_tot"] = num(p_tot);
    doc["spacing_status"] = spacing_status_name(rec.spacing.status);
    doc["residual"] = num(rec.spacing.residual);
    doc["exact"] = result_row(rec.result);
    doc["exact"]["R"] = num(rec.result.R);
    Row approx;
    approx["status"] = rec.approx.status == ApproxStatus::kValid      ? "valid"
                       : rec.approx.status == ApproxStatus::kInfinite ? "infinite"
                                                                       : "invalid";
    approx["R"] = num(rec.approx.R);
    approx["eta"] = num(rec.approx.eta);
    approx["R_relative_diff"] = num(relative_diff(rec.approx.R, rec.result.R));
    approx["eta_relative_diff"] = num(relative_diff(rec.approx.eta, rec.result.eta));
    doc["approx"] = approx;
    doc["bare_R"] = num(bare_range(p_tot));
    std::vector<Row> coeffs;
    for (double c : rec.S.s.coefficients()) {
        coeffs.push_back(num(c));
    }
    doc["S_coefficients"] = coeffs;
    sink.write([&](std::ostream& os) { os << doc.dump(2) << "\n"; });
    return rec.result.above_threshold ? kExitAboveThreshold : kExitOk;
}

int cmd_mc(const ModelOptions& model, std::vector<double> us, std::uint64_t trials, std::uint64_t seed,
           unsigned workers, std::size_t trace, const std::string& format, const Sink& sink) {
    StabilizerCode code = resolve_code(model.code);
    NodeCircuit circuit = build_node_circuit(code, model.circuit_options());
    ErrorParams params = model.single();
    if (us.empty()) {
        us = default_u_grid();
    }
    PerformancePolynomial S = assemble_S(circuit, params);
    McOptions opt;
    opt.seed = seed;
    opt.workers = workers;
    opt.trace_sample = trace;
    CrossValidationReport rep = cross_validate(circuit, params, S, us, trials, opt);
    std::uint64_t disagreements = 0;
    for (const auto& p : rep.points) {
        disagreements += p.decoder_disagreements;
    }
    if (format == "json") {
        sink.write([&](std::ostream& os) { os << to_json(rep).dump(2) << "\n"; });
    } else {
        std::vector<Row> rows;
        for (const auto& p : rep.points) {
            Row row;
            row["u"] = num(p.u);
            row["analytic"] = num(p.analytic);
            row["mc"] = num(p.mc);
            row["sigma"] = num(p.sigma);
            row["deviation_sigmas"] = num(p.deviation_sigmas);
            row["violation"] = p.violation;
            row["decoder_disagreements"] = p.decoder_disagreements;
            rows.push_back(std::move(row));
        }
        emit(sink, format, Row{}, rows);
    }
    bool ok = rep.fraction_within() >= 0.95 && disagreements == 0;
    return ok ? kExitOk : kExitValidation;
}

int cmd_table1(double joint_rate, bool emission_first, const std::string& format, const Sink& sink) {
    std::vector<Row> rows;
    for (const auto& t : table1(joint_rate, emission_first)) {
        Row row;
        row["code"] = t.code;
        row["n"] = t.n;
        row["k"] = t.k;
        row["d"] = t.d;
        row["D"] = t.dim;
        row["matter_qudits"] = t.matter_qudits;
        row["encoding_elements"] = t.encoding_elements;
        row["schedule_slots"] = t.schedule_slots;
        row["ebit_rate_ghz"] = num(t.ebit_rate_ghz);
        row["effective_attenuation"] = num(t.result.effective_attenuation);
        row["u_star"] = num(t.result.u_star);
        row["above_threshold"] = t.result.above_threshold;
        rows.push_back(std::move(row));
    }
    Row meta{{"command", "table1"},
             {"joint_rate", num(joint_rate)},
             {"ebit_rate_formula", "1 / ((n + 1) * 100 ps), P_tot = 1"}};
    emit(sink, format, meta, rows);
    return kExitOk;
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

StabilizerCode resolve_code(const std::string& name_or_path) {
    try {
        return find_builtin(name_or_path);
    } catch (const std::out_of_range&) {
        if (std::filesystem::exists(name_or_path)) {
            return load_code_file(name_or_path);
        }
        throw;
    }
}

int schedule_slots(const StabilizerCode& code) { return code.n + 1; }

double ebit_rate_ghz(const StabilizerCode& code) { return 1e-9 / (schedule_slots(code) * kPhotonGateSeconds); }

std::vector<Table1Row> table1(double joint_rate, bool emission_first) {
    if (!(joint_rate > 0.0 && joint_rate < 1.0)) {
        throw std::invalid_argument("joint rate must lie in (0, 1)");
    }
    ErrorParams params = resolve_preset(preset_by_name("fig4"), {joint_rate});
    std::vector<Table1Row> rows;
    for (const auto& code : builtin_codes()) {
        NodeCircuit c = build_node_circuit(code, CircuitOptions{emission_first});
        Table1Row t;
        t.code = code.name;
        t.n = code.n;
        t.k = code.k;
        t.d = code.d;
        t.dim = code.dim.value();
        t.matter_qudits = c.matter_qudit_total;
        t.encoding_elements = c.encoding_elements;
        t.schedule_slots = schedule_slots(code);
        t.ebit_rate_ghz = ebit_rate_ghz(code);
        t.result = optimize(assemble_S(c, params), 0.1);
        rows.push_back(t);
    }
    return rows;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Serialized quantum repeater performance model"};
    app.name("serial_repeater");
    app.require_subcommand(1);

    std::string format = "csv";
    std::string out_path;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        cmd->add_option("--out", out_path, "write output to this file");
    };

    auto* codes = app.add_subcommand("codes", "inspect the code library");
    codes->require_subcommand(1);
    auto* codes_list = codes->add_subcommand("list", "list builtin codes");
    add_io(codes_list);
    std::string validate_target;
    auto* codes_validate = codes->add_subcommand("validate", "validate a builtin code or code file");
    codes_validate->add_option("target", validate_target, "code name or file")->required();
    codes_validate->add_option("--out", out_path, "write output to this file");

    ModelOptions sweep_model;
    SweepOptions sweep_opts;
    auto* sweep = app.add_subcommand("sweep", "parameter sweeps of range and rate");
    sweep_model.attach(sweep, true);
    sweep->add_option("--ptot", sweep_opts.p_tot, "end-to-end success target")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    sweep->add_option("--grid", sweep_opts.grid, "points per axis (fig3) or per curve (fig4)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep->add_option("--lo", sweep_opts.lo, "fig3 lower knob bound")->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--hi", sweep_opts.hi, "fig3 upper knob bound")->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--r-max", sweep_opts.r_max, "fig4 largest R")->check(CLI::PositiveNumber);
    sweep->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    add_io(sweep);

    ModelOptions opt_model;
    double opt_ptot = 0.1;
    auto* optimize_cmd = app.add_subcommand("optimize", "optimal spacing, range and density");
    opt_model.attach(optimize_cmd, false);
    optimize_cmd->add_option("--ptot", opt_ptot, "end-to-end success target")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    optimize_cmd->add_option("--out", out_path, "write output to this file");

    ModelOptions mc_model;
    std::vector<double> mc_u;
    std::uint64_t mc_trials = 100000;
    std::uint64_t mc_seed = 1;
    std::size_t mc_trace = 0;
    auto* mc = app.add_subcommand("mc", "Monte Carlo cross-check of the node success probability");
    mc_model.attach(mc, false);
    mc->add_option("--u", mc_u, "survival probabilities (default: 21 points on [0.5, 1])")
        ->check(CLI::Range(0.0, 1.0));
    mc->add_option("--trials", mc_trials, "trials per point")->check(CLI::PositiveNumber)->capture_default_str();
    mc->add_option("--seed", mc_seed, "base seed")->capture_default_str();
    mc->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    mc->add_option("--trace", mc_trace, "trial traces to attach to violating points");
    add_io(mc);

    double t1_rate = 1e-3;
    bool t1_emission = false;
    auto* t1 = app.add_subcommand("table1", "resource and range summary for the builtin codes");
    t1->add_option("--joint-rate", t1_rate, "joint error rate")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    t1->add_flag("--emission-first", t1_emission, "count each photon's first encoding interaction as its emission");
    add_io(t1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    Sink sink{out_path, out};
    try {
        if (codes_list->parsed()) {
            return cmd_codes_list(format, sink);
        }
        if (codes_validate->parsed()) {
            return cmd_codes_validate(validate_target, sink, err);
        }
        if (sweep->parsed()) {
            return cmd_sweep(sweep_model, sweep_opts, workers, format, sink);
        }
        if (optimize_cmd->parsed()) {
            return cmd_optimize(opt_model, opt_ptot, sink);
        }
        if (mc->parsed()) {
            return cmd_mc(mc_model, mc_u, mc_trials, mc_seed, workers, mc_trace, format, sink);
        }
        if (t1->parsed()) {
            return cmd_table1(t1_rate, t1_emission, format, sink);
        }
    } catch (const CodeFormatError& e) {
        err << "invalid code: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    err << app.help();
    return kExitUsage;
}

}  // namespace srep
