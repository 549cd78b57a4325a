// Copyright 2026 The virtspin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "virtspin/compiler.hpp"
#include "virtspin/dynamics.hpp"
#include "virtspin/error.hpp"
#include "virtspin/gates.hpp"
#include "virtspin/schedule_io.hpp"
#include "virtspin/spin_system.hpp"

namespace virtspin::cli {

namespace {

using nlohmann::json;

enum class Format { Table, Csv, StructuredText };

struct RunConfig {
    double omega0 = 1.0;
    double omegaQ = 0.01;
    double theta = kPi / 5.0;
    double phi = 0.0;
    std::string method = "exact";
    std::string q2 = "as-printed";
    double gammaHrf = 1e-3;
    std::string format;
    std::string outPath;

    SpinSystem system() const {
        SpinSystem sys{omega0, omegaQ, theta, phi, Q2Form::AsPrinted};
        if (q2 == "sin-squared") sys.q2Form = Q2Form::SinSquared;
        sys.validate();
        return sys;
    }

    SpectrumMethod spectrum_method() const {
        return method == "pert" ? SpectrumMethod::PerturbativeFirstOrder : SpectrumMethod::Exact;
    }

    Format output_format(Format fallback) const {
        if (format.empty()) return fallback;
        if (format == "csv") return Format::Csv;
        if (format == "st") return Format::StructuredText;
        return Format::Table;
    }
};

std::string num(double v, int digits = 17) {
    if (std::isnan(v)) return "nan";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string ket(int level) {
    const auto label = encode(level);
    return "|" + std::to_string(label.bits[0]) + std::to_string(label.bits[1]) +
           std::to_string(label.bits[2]) + ">";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// --- spectrum --------------------------------------------------------------

void cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const SpinSystem sys = cfg.system();
    const Spectrum spectrum = compute_spectrum(sys, cfg.spectrum_method());
    if (spectrum.outsidePerturbativeRegime) {
        err << "warning: omegaQ/omega0 = " << num(sys.omegaQ / sys.omega0, 6)
            << " >= " << kPerturbativeLimit << "; first-order theory is unreliable\n";
    }
    const auto rows = transition_table(spectrum);
    const double w0 = sys.omega0;

    switch (cfg.output_format(Format::Table)) {
        case Format::Csv:
            out << "upper,lower,omega,ix_element,allowed\n";
            for (const auto& r : rows) {
                out << r.upper << ',' << r.lower << ',' << num(r.omega / w0) << ','
                    << num(r.ixElement) << ',' << (r.allowed ? "allowed" : "forbidden") << '\n';
            }
            break;
        case Format::StructuredText: {
            json doc;
            doc["method"] = std::string(to_string(spectrum.method));
            doc["energies"] = json::array();
            for (int m = 0; m < kDim; ++m) doc["energies"].push_back(spectrum.energies(m) / w0);
            doc["transitions"] = json::array();
            for (const auto& r : rows) {
                doc["transitions"].push_back({{"upper", r.upper},
                                              {"lower", r.lower},
                                              {"omega", r.omega / w0},
                                              {"ix_element", r.ixElement},
                                              {"allowed", r.allowed}});
            }
            out << doc.dump(2) << '\n';
            break;
        }
        case Format::Table: {
            out << "# spectrum: " << to_string(spectrum.method) << ", omegaQ/omega0="
                << num(sys.omegaQ / w0, 6) << ", theta=" << num(sys.theta, 6)
                << ", phi=" << num(sys.phi, 6) << '\n';
            out << "  M  ket     energy\n";
            for (int m = 0; m < kDim; ++m) {
                char line[96];
                std::snprintf(line, sizeof line, "  %d  %s  %+.12f\n", m, ket(m).c_str(),
                              spectrum.energies(m) / w0);
                out << line;
            }
            out << "upper lower          omega      |<n|Ix|m>|  line\n";
            for (const auto& r : rows) {
                char line[128];
                std::snprintf(line, sizeof line, "%5d %5d %14.12f %14.6e  %s\n", r.upper,
                              r.lower, r.omega / w0, r.ixElement,
                              r.allowed ? "allowed" : "forbidden");
                out << line;
            }
            break;
        }
    }
}

// --- compile ---------------------------------------------------------------

void print_schedule_table(const PulseSchedule& schedule, std::ostream& out) {
    const double w0 = schedule.resolution ? schedule.resolution->system.omega0 : 1.0;
    out << "gate:";
    for (const auto& g : schedule.gates) out << ' ' << g.name();
    out << '\n';
    for (std::size_t k = 0; k < schedule.groups.size(); ++k) {
        out << "group " << k << ":\n";
        for (const auto& st : schedule.groups[k].tones) {
            const auto& t = st.tone;
            out << "  (" << t.upper << "," << t.lower << ") angle=" << num(t.angle, 12)
                << " phase=" << num(t.phase, 12) << " axis=" << to_string(t.axis)
                << " omega=" << (st.omega ? num(*st.omega / w0, 12) : "-")
                << " duration=" << (st.duration ? num(*st.duration * w0, 12) : "forbidden")
                << '\n';
        }
    }
}

void cmd_compile(const RunConfig& cfg, const std::string& gateText, std::ostream& out,
                 std::ostream& err) {
    const GateSpec gate = parse_gate(gateText);
    const SpinSystem sys = cfg.system();
    if (!(cfg.gammaHrf > 0.0)) throw InputError("gammaHrf must be positive");
    const Spectrum spectrum = compute_spectrum(sys, cfg.spectrum_method());
    const PulseSchedule schedule = resolve(compile(gate), spectrum, sys, cfg.gammaHrf);
    for (const auto& group : schedule.groups) {
        for (const auto& st : group.tones) {
            if (!st.duration) {
                err << "warning: transition (" << st.tone.upper << "," << st.tone.lower
                    << ") has a vanishing matrix element; no finite pulse length\n";
            }
        }
    }
    if (cfg.output_format(Format::StructuredText) == Format::Table) {
        print_schedule_table(schedule, out);
    } else {
        out << serialize_schedule(schedule);
    }
}

// --- verify ----------------------------------------------------------------

int cmd_verify(const RunConfig& cfg, const std::string& gateText, const std::string& schedulePath,
               std::ostream& out) {
    PulseSchedule schedule;
    if (!schedulePath.empty()) {
        schedule = parse_schedule(read_file(schedulePath));
    } else if (!gateText.empty()) {
        schedule = compile(parse_gate(gateText));
    } else {
        throw InputError("verify needs a gate string or --schedule FILE");
    }
    const Mat8 u = schedule_propagator(schedule);
    const EquivalenceReport report = verify_sequence(schedule.gates, u);

    std::string name;
    for (const auto& g : schedule.gates) name += (name.empty() ? "" : " ") + g.name();

    switch (cfg.output_format(Format::Table)) {
        case Format::Csv:
            out << "gate,verdict,max_deviation\n"
                << name << ',' << to_string(report.verdict) << ',' << num(report.maxDeviation)
                << '\n';
            break;
        case Format::StructuredText: {
            json doc;
            doc["gate"] = name;
            doc["verdict"] = std::string(to_string(report.verdict));
            doc["max_deviation"] = report.maxDeviation;
            doc["phase_map"] = json::array();
            for (const auto& p : report.phaseMap) {
                doc["phase_map"].push_back(
                    {{"row", p.row}, {"col", p.col}, {"re", p.factor.real()},
                     {"im", p.factor.imag()}});
            }
            out << doc.dump(2) << '\n';
            break;
        }
        case Format::Table:
            out << "gate: " << name << '\n'
                << "verdict: " << to_string(report.verdict) << '\n'
                << "max_deviation: " << num(report.maxDeviation, 6) << '\n';
            break;
    }
    return report.accepted() ? kOk : kMismatch;
}

// --- sweep -----------------------------------------------------------------

std::pair<int, int> parse_pair(const std::string& text) {
    int a = -1, b = -1;
    char sep = 0;
    std::istringstream in(text);
    if (!(in >> a >> sep >> b) || (sep != ',' && sep != '-') || !in.eof()) {
        throw InputError("pair must look like 5,7 (got '" + text + "')");
    }
    if (a < 0 || a >= kDim || b < 0 || b >= kDim || a == b) {
        throw InputError("pair must name two distinct levels in 0..7");
    }
    return {std::min(a, b), std::max(a, b)};
}

int cmd_sweep(const RunConfig& cfg, const std::string& pairText, double lo, double hi, int points,
              std::ostream& out, std::ostream& err) {
    const auto [a, b] = parse_pair(pairText);
    const ScalingSweep sweep = scaling_sweep(cfg.system(), a, b, lo, hi, points);
    const std::string pair = std::to_string(a) + "-" + std::to_string(b);

    if (cfg.output_format(Format::Csv) == Format::StructuredText) {
        json doc;
        doc["pair"] = {a, b};
        doc["points"] = json::array();
        for (const auto& p : sweep.points) {
            doc["points"].push_back({{"omegaQ_over_omega0", p.ratio},
                                     {"element", p.element},
                                     {"slope_window", std::isnan(p.windowSlope)
                                                          ? json(nullptr)
                                                          : json(p.windowSlope)}});
        }
        doc["slope"] = sweep.degenerate ? json(nullptr) : json(sweep.slope);
        out << doc.dump(2) << '\n';
    } else {
        out << "omegaQ_over_omega0,pair,element,slope_window\n";
        for (const auto& p : sweep.points) {
            out << num(p.ratio) << ',' << pair << ',' << num(p.element) << ','
                << num(p.windowSlope) << '\n';
        }
        if (!sweep.degenerate) out << "# fitted_slope," << num(sweep.slope) << '\n';
    }
    if (sweep.degenerate) {
        err << "degenerate fit: every element of pair (" << a << "," << b << ") is below "
            << kNegligibleElement << "; no quadrupole mixing (is theta = 0?)\n";
        return kNumericalError;
    }
    return kOk;
}

// --- simulate --------------------------------------------------------------

int cmd_simulate(RunConfig cfg, const std::string& path, const CLI::App& app, int steps,
                 const std::string& methodName, std::ostream& out, std::ostream& err) {
    const PulseSchedule schedule = parse_schedule(read_file(path));
    // Parameters recorded in the schedule apply unless overridden on the command line.
    if (schedule.resolution) {
        const auto& r = *schedule.resolution;
        if (app.count("--omega0") == 0) cfg.omega0 = r.system.omega0;
        if (app.count("--omegaQ") == 0) cfg.omegaQ = r.system.omegaQ;
        if (app.count("--theta") == 0) cfg.theta = r.system.theta;
        if (app.count("--phi") == 0) cfg.phi = r.system.phi;
        if (app.count("--q2") == 0) cfg.q2 = std::string(to_string(r.system.q2Form));
        if (app.count("--gammaHrf") == 0) cfg.gammaHrf = r.gammaHrf;
    }
    IntegrationConfig integration;
    integration.stepsPerShortestPeriod = steps;
    integration.method =
        methodName == "midpoint" ? IntegrationMethod::PiecewiseConstant : IntegrationMethod::Magnus4;

    const SpinSystem sys = cfg.system();
    const ScheduleSimulation sim = simulate_schedule(sys, schedule, cfg.gammaHrf, integration);

    constexpr double kWarnDeviation = 0.05;
    if (sim.deviation > kWarnDeviation) {
        err << "warning: deviation from the idealized pulse model is " << num(sim.deviation, 4)
            << " (> " << kWarnDeviation << "); drive is strong compared with the line spacing\n";
    }

    std::string name;
    for (const auto& g : schedule.gates) name += (name.empty() ? "" : " ") + g.name();

    struct Row {
        int input;
        int expected;
        double pExpected;
        int observed;
        double pObserved;
    };
    std::vector<Row> rows;
    for (int in = 0; in < kDim; ++in) {
        Row row{in, 0, 0.0, 0, 0.0};
        for (int r = 0; r < kDim; ++r) {
            if (std::abs(sim.ideal(r, in)) > std::abs(sim.ideal(row.expected, in))) row.expected = r;
            if (std::norm(sim.interaction(r, in)) > row.pObserved) {
                row.observed = r;
                row.pObserved = std::norm(sim.interaction(r, in));
            }
        }
        row.pExpected = std::norm(sim.interaction(row.expected, in));
        rows.push_back(row);
    }

    const double w0 = sys.omega0;
    switch (cfg.output_format(Format::Table)) {
        case Format::Csv:
            out << "input,expected,p_expected,observed,p_observed\n";
            for (const auto& r : rows) {
                out << r.input << ',' << r.expected << ',' << num(r.pExpected) << ','
                    << r.observed << ',' << num(r.pObserved) << '\n';
            }
            out << "# rwa_deviation," << num(sim.deviation) << '\n';
            break;
        case Format::StructuredText: {
            json doc;
            doc["gate"] = name;
            doc["duration"] = sim.totalDuration * w0;
            doc["rwa_deviation"] = sim.deviation;
            doc["transfer"] = json::array();
            for (const auto& r : rows) {
                doc["transfer"].push_back({{"input", r.input},
                                           {"expected", r.expected},
                                           {"p_expected", r.pExpected},
                                           {"observed", r.observed},
                                           {"p_observed", r.pObserved}});
            }
            out << doc.dump(2) << '\n';
            break;
        }
        case Format::Table:
            out << "schedule: " << name << '\n'
                << "duration: " << num(sim.totalDuration * w0, 10) << '\n'
                << "rwa_deviation: " << num(sim.deviation, 6) << '\n'
                << "transfer:\n";
            for (const auto& r : rows) {
                out << "  " << ket(r.input) << " -> " << ket(r.expected)
                    << "  p=" << num(r.pExpected, 8) << '\n';
            }
            break;
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Compile and simulate three-qubit gates on a single spin-7/2", "virtspin"};
    app.set_config("--config", "", "TOML/INI file with option defaults (flags win)");
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--omega0", cfg.omega0, "Zeeman angular frequency")->capture_default_str();
    app.add_option("--omegaQ", cfg.omegaQ, "Quadrupole angular frequency")->capture_default_str();
    app.add_option("--theta", cfg.theta, "Polar angle of the field gradient (rad)")
        ->capture_default_str();
    app.add_option("--phi", cfg.phi, "Azimuth of the field gradient (rad)")->capture_default_str();
    app.add_option("--method", cfg.method, "Spectrum used to resolve frequencies")
        ->check(CLI::IsMember({"pert", "exact"}))
        ->capture_default_str();
    app.add_option("--q2", cfg.q2, "Form of the rank-2 orientation coefficient")
        ->check(CLI::IsMember({"as-printed", "sin-squared"}))
        ->capture_default_str();
    app.add_option("--gammaHrf", cfg.gammaHrf, "Rotating-field drive strength")
        ->capture_default_str();
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"table", "csv", "st"}));
    app.add_option("--out", cfg.outPath, "Write output to FILE instead of stdout");

    auto* spectrum = app.add_subcommand("spectrum", "Energy levels and the 28 transition lines");

    std::string gateText;
    auto* compileCmd = app.add_subcommand("compile", "Compile a gate into a pulse schedule");
    compileCmd->add_option("gate", gateText, "Gate, e.g. CCNOT:QR->S")->required();

    std::string verifyGate;
    std::string schedulePath;
    auto* verifyCmd = app.add_subcommand("verify", "Check compiled pulses against the gate");
    verifyCmd->add_option("gate", verifyGate, "Gate string");
    verifyCmd->add_option("--schedule", schedulePath, "Replay a schedule file instead");

    std::string pairText = "5,7";
    double lo = 1e-4;
    double hi = 1e-2;
    int points = 20;
    auto* sweepCmd = app.add_subcommand("sweep", "Scaling of a transition element with omegaQ");
    sweepCmd->add_option("--pair", pairText, "Level pair, e.g. 5,7")->capture_default_str();
    sweepCmd->add_option("--from", lo, "Smallest omegaQ/omega0")->capture_default_str();
    sweepCmd->add_option("--to", hi, "Largest omegaQ/omega0")->capture_default_str();
    sweepCmd->add_option("--points", points, "Number of log-spaced samples")
        ->capture_default_str();

    std::string simPath;
    int steps = IntegrationConfig{}.stepsPerShortestPeriod;
    std::string integrator = "magnus4";
    auto* simulateCmd = app.add_subcommand("simulate", "Integrate the physical drive of a schedule");
    simulateCmd->add_option("schedule", simPath, "Schedule file from `compile`")->required();
    simulateCmd->add_option("--steps", steps, "Slices per shortest oscillation period")
        ->capture_default_str();
    simulateCmd->add_option("--integrator", integrator, "Slice propagator")
        ->check(CLI::IsMember({"magnus4", "midpoint"}))
        ->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        if (compileCmd->parsed() || verifyCmd->parsed()) {
            err << "gate grammar: KIND:CONTROLS->TARGET, e.g. NOT:S, CNOT:R->Q, CCNOT:QR->S, "
                   "CCUT:QR->S(phi,f)\n";
        }
        return kInputError;
    }

    std::ofstream file;
    if (!cfg.outPath.empty()) {
        file.open(cfg.outPath);
        if (!file) {
            err << "error: cannot write '" << cfg.outPath << "'\n";
            return kInputError;
        }
    }
    std::ostream& sink = cfg.outPath.empty() ? out : file;

    try {
        if (spectrum->parsed()) {
            cmd_spectrum(cfg, sink, err);
            return kOk;
        }
        if (compileCmd->parsed()) {
            cmd_compile(cfg, gateText, sink, err);
            return kOk;
        }
        if (verifyCmd->parsed()) {
            const int code = cmd_verify(cfg, verifyGate, schedulePath, sink);
            if (code != kOk) err << "verification failed\n";
            return code;
        }
        if (sweepCmd->parsed()) return cmd_sweep(cfg, pairText, lo, hi, points, sink, err);
        if (simulateCmd->parsed()) {
            return cmd_simulate(cfg, simPath, app, steps, integrator, sink, err);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return kNumericalError;
    }
    return kInputError;
}

}  // namespace virtspin::cli
