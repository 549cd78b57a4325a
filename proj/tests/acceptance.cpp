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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "virtspin/compiler.hpp"
#include "virtspin/dynamics.hpp"
#include "virtspin/gates.hpp"
#include "virtspin/pulse.hpp"
#include "virtspin/schedule_io.hpp"
#include "virtspin/spin_system.hpp"

#ifdef VIRTSPIN_HAVE_CLI
#include "../tools/cli.hpp"
#endif

using namespace virtspin;

namespace {

const cplx kI{0.0, 1.0};

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += "failed: " + what;
        }
    }
    void note(const std::string& text) {
        if (!detail.empty()) detail += "; ";
        detail += text;
    }
};

std::string fmt(double v, int digits = 4) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double fitted_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double x = std::log(xs[k]), y = std::log(ys[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Basis-label permutation of a NOT-family gate from bit arithmetic alone.
int flipped(const GateSpec& g, int in) {
    const int c = g.control_mask();
    return (in & c) == c ? in ^ bit_mask(g.target) : in;
}

// 1. Gate identities ---------------------------------------------------------

Outcome gate_identities() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    int verified = 0;

    // Two-level pi pulse written with projectors.
    {
        const Mat8 v = pulse_propagator({6, 7, kPi, 0.0, Axis::X});
        const Mat8 expected = Mat8::Identity() - (projector(7, 7).matrix + projector(6, 6).matrix) +
                              kI * (projector(6, 7).matrix + projector(7, 6).matrix);
        const bool ok = max_abs(v - expected) < 1e-12;
        o.require(ok, "pi pulse on (6,7) in projector form");
        verified += ok;
    }
    // Level pair (6,7) is the ket pair |110>,|111>.
    {
        Mat8 kets = Mat8::Zero();
        kets(decode({1, 1, 0}), decode({1, 1, 1})) = 1.0;
        kets(decode({1, 1, 1}), decode({1, 1, 0})) = 1.0;
        const bool ok = max_abs(projector(6, 7).matrix + projector(7, 6).matrix - kets) == 0.0;
        o.require(ok, "P67 + P76 = |110><111| + |111><110|");
        verified += ok;
    }
    // Twelve pulse realizations of NOT, CNOT and CCNOT.
    for (const auto& g : not_family_gates()) {
        const EquivalenceReport r = verify(g, schedule_propagator(compile(g)));
        const bool ok = r.verdict == Verdict::EqualUpToI && r.maxDeviation < 1e-12;
        o.require(ok, g.name() + " verdict " + std::string(to_string(r.verdict)));
        verified += ok;
    }
    // Generalization to CCUT: (pi, 0) reproduces CCNOT, arbitrary (phi, f) the block unitary.
    {
        const GateSpec ccnot = parse_gate("CCNOT:QR->S");
        const GateSpec ccut = parse_gate("CCUT:QR->S(3.141592653589793,0)");
        const EquivalenceReport r = verify(ccnot, schedule_propagator(compile(ccut)));
        bool ok = r.verdict == Verdict::EqualUpToI && r.maxDeviation < 1e-12;
        std::mt19937 rng(15);
        std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi), phase(-kPi, kPi);
        for (const char* base : {"CCUT:QR->S", "CCUT:QS->R", "CCUT:RS->Q"}) {
            for (int k = 0; k < 20; ++k) {
                const std::string text =
                    std::string(base) + "(" + fmt(angle(rng), 17) + "," + fmt(phase(rng), 17) + ")";
                const GateSpec g = parse_gate(text);
                const EquivalenceReport e = verify(g, schedule_propagator(compile(g)));
                ok = ok && e.verdict == Verdict::Exact && e.maxDeviation < 1e-12;
            }
        }
        o.require(ok, "CCUT generalization");
        verified += ok;
    }
    const double elapsed = seconds_since(t0);
    o.require(verified == 15, std::to_string(verified) + "/15 identities");
    o.require(elapsed < 1.0, "runtime " + fmt(elapsed) + " s >= 1 s");
    o.note(std::to_string(verified) + "/15 identities, " + fmt(elapsed, 3) + " s");
    return o;
}

// 2. Truth tables ------------------------------------------------------------

Outcome truth_tables() {
    Outcome o;
    int gates = 0, rows = 0;
    for (const auto& g : not_family_gates()) {
        const Mat8 u = schedule_propagator(compile(g));
        bool gateOk = true;
        for (int in = 0; in < kDim; ++in) {
            const int expected = flipped(g, in);
            const double modulus = std::abs(u(expected, in));
            double leak = 0.0;
            for (int r = 0; r < kDim; ++r) {
                if (r != expected) leak = std::max(leak, std::abs(u(r, in)));
            }
            const bool ok = std::abs(modulus - 1.0) <= 1e-10 && leak <= 1e-10;
            gateOk = gateOk && ok;
            rows += ok;
            if (!ok) o.require(false, g.name() + " input " + std::to_string(in));
        }
        // The library's own readout must agree with the oracle.
        const auto table = truth_table(g);
        for (int in = 0; in < kDim; ++in) {
            gateOk = gateOk && table[in].output == flipped(g, in);
        }
        gates += gateOk;
    }
    o.require(gates == 12, std::to_string(gates) + "/12 gates");
    o.note(std::to_string(gates) + "/12 gates, " + std::to_string(rows) + "/96 inputs");
    return o;
}

// 3. Spectrum cross-check ----------------------------------------------------

Outcome spectrum_cross_check() {
    Outcome o;
    std::vector<double> ratios, errors;
    for (int k = 0; k <= 16; ++k) {
        const double r = 1e-4 * std::pow(10.0, k / 8.0);
        const SpinSystem sys{1.0, r, kPi / 5, 0.0};
        ratios.push_back(r);
        errors.push_back(
            (perturbative_spectrum(sys).energies - exact_spectrum(sys).energies).cwiseAbs().maxCoeff());
    }
    const double slope = fitted_slope(ratios, errors);
    o.require(std::abs(slope - 2.0) <= 0.15, "error slope " + fmt(slope));

    double worst = 0.0;
    for (auto method : {SpectrumMethod::PerturbativeFirstOrder, SpectrumMethod::Exact}) {
        const Spectrum s = compute_spectrum({1.0, 0.01, 0.0, 0.0}, method);
        worst = std::max(worst, std::abs(std::abs(s.energies(6) - s.energies(7)) - 0.88));
    }
    o.require(worst <= 1e-12, "Omega67 off by " + fmt(worst));
    o.note("error slope " + fmt(slope) + ", |Omega67 - 0.88| = " + fmt(worst, 2));
    return o;
}

// 4. Forbidden-transition scaling --------------------------------------------

Outcome forbidden_transition_scaling() {
    Outcome o;
    const SpinSystem base{1.0, 0.0, kPi / 5, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    const ScalingSweep s57 = scaling_sweep(base, 5, 7, 1e-4, 1e-2, 20);
    const double elapsed = seconds_since(t0);
    const ScalingSweep s37 = scaling_sweep(base, 3, 7, 1e-4, 1e-2, 20);

    o.require(!s57.degenerate && s57.points.size() == 20, "(5,7) sweep");
    o.require(s57.slope >= 0.85 && s57.slope <= 1.15, "(5,7) slope " + fmt(s57.slope));
    o.require(elapsed < 10.0, "sweep took " + fmt(elapsed) + " s");
    o.note("(5,7) slope " + fmt(s57.slope) + ", (3,7) slope " +
           (s37.degenerate ? std::string("degenerate") : fmt(s37.slope)) + " (reported), " +
           fmt(elapsed, 3) + " s for 20 points");
    return o;
}

// 5. Exact dynamics ----------------------------------------------------------

Outcome exact_dynamics() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    // Line spacing 2 omegaQ q0 must dwarf the Rabi frequency 2 g |<6|Ix|7>|.
    const SpinSystem sys{1.0, 0.05, kPi / 6, 0.0};
    const Spectrum spectrum = exact_spectrum(sys);
    const std::vector<Tone> pi67 = {{6, 7, kPi, 0.0, Axis::X}};

    const auto transfer = [&](int steps) {
        IntegrationConfig cfg;
        cfg.stepsPerShortestPeriod = steps;
        const DriveSpec d = drive_for_tones(spectrum, pi67, 1e-3);
        const Mat8 u = to_interaction_frame(spectrum, evolve(sys, d, cfg), d.start,
                                            d.start + d.duration);
        return std::norm(u(7, 6));
    };
    const double p64 = transfer(64);
    const double p128 = transfer(128);
    o.require(p64 > 0.99, "transfer " + fmt(p64, 6));
    o.require(std::abs(p64 - p128) < 1e-6, "not converged in steps");

    const std::vector<double> gs = {1e-2, 5e-3, 2e-3, 1e-3};
    std::vector<double> devs;
    for (double g : gs) devs.push_back(rwa_deviation(sys, pi67[0], {g, 0.0}));
    bool monotone = true;
    for (std::size_t k = 1; k < devs.size(); ++k) monotone = monotone && devs[k] < devs[k - 1];
    o.require(monotone, "rwa_deviation not monotone");

    const double elapsed = seconds_since(t0);
    o.require(elapsed < 60.0, "runtime " + fmt(elapsed) + " s");
    std::string devText;
    for (std::size_t k = 0; k < gs.size(); ++k) {
        devText += (k ? ", " : "") + fmt(devs[k], 3) + "@" + fmt(gs[k], 1);
    }
    o.note("omegaQ/omega0 = 0.05, theta = pi/6: |<7|U|6>|^2 = " + fmt(p64, 8) + ", rwa_deviation " + devText + ", " + fmt(elapsed, 3) +
           " s");
    return o;
}

// 6. Algebra suites ----------------------------------------------------------

Tone random_tone(std::mt19937& rng) {
    std::uniform_int_distribution<int> level(0, kDim - 1);
    std::uniform_real_distribution<double> angle(-4 * kPi, 4 * kPi), phase(-kPi, kPi);
    Tone t;
    t.upper = level(rng);
    do {
        t.lower = level(rng);
    } while (t.lower == t.upper);
    t.angle = angle(rng);
    t.phase = phase(rng);
    t.axis = rng() % 2 ? Axis::X : Axis::Y;
    return t;
}

Outcome algebra_suites() {
    Outcome o;

    int projectorFailures = 0;
    for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l)
            for (int m = 0; m < kDim; ++m)
                for (int n = 0; n < kDim; ++n) {
                    const Mat8 lhs = projector(k, l).matrix * projector(m, n).matrix;
                    const Mat8 rhs = l == m ? projector(k, n).matrix : Mat8::Zero();
                    projectorFailures += lhs != rhs;
                }
    o.require(projectorFailures == 0, std::to_string(projectorFailures) + " projector relations");

    std::mt19937 rng(2026);
    double unitarity = 0.0;
    for (int k = 0; k < 2000; ++k) unitarity = std::max(unitarity, unitarity_defect(pulse_propagator(random_tone(rng))));
    for (const auto& g : not_family_gates()) {
        unitarity = std::max(unitarity, unitarity_defect(schedule_propagator(compile(g))));
    }
    for (int k = 0; k < 200; ++k) {
        std::vector<Tone> group;
        for (int tries = 0; tries < 16 && group.size() < 4; ++tries) {
            const Tone t = random_tone(rng);
            if (std::none_of(group.begin(), group.end(), [&](const Tone& u) { return u.overlaps(t); })) {
                group.push_back(t);
            }
        }
        unitarity = std::max(unitarity, unitarity_defect(multi_tone_propagator(group)));
    }
    o.require(unitarity <= 1e-12, "unitarity defect " + fmt(unitarity));

    double order = 0.0;
    for (int k = 0; k < 500; ++k) {
        std::vector<Tone> group;
        for (int tries = 0; tries < 32 && group.size() < 4; ++tries) {
            const Tone t = random_tone(rng);
            if (std::none_of(group.begin(), group.end(), [&](const Tone& u) { return u.overlaps(t); })) {
                group.push_back(t);
            }
        }
        const Mat8 reference = multi_tone_propagator(group);
        std::sort(group.begin(), group.end(),
                  [](const Tone& a, const Tone& b) { return a.upper < b.upper; });
        do {
            order = std::max(order, max_abs(multi_tone_propagator(group) - reference));
        } while (std::next_permutation(group.begin(), group.end(), [](const Tone& a, const Tone& b) {
            return a.upper < b.upper;
        }));
    }
    o.require(order <= 1e-14, "order dependence " + fmt(order));

    double additivity = 0.0;
    for (int k = 0; k < 2000; ++k) {
        Tone a = random_tone(rng);
        Tone b = a;
        b.angle = random_tone(rng).angle;
        Tone sum = a;
        sum.angle = a.angle + b.angle;
        additivity = std::max(
            additivity, max_abs(pulse_propagator(a) * pulse_propagator(b) - pulse_propagator(sum)));
    }
    o.require(additivity <= 1e-12, "additivity " + fmt(additivity));

    o.note("4096 projector relations, unitarity " + fmt(unitarity, 2) + ", order " + fmt(order, 2) +
           ", additivity " + fmt(additivity, 2));
    return o;
}

// 7. CLI contract ------------------------------------------------------------

#ifdef VIRTSPIN_HAVE_CLI

int cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    return cli::run(args, out, err);
}

std::vector<std::string> grammar_gates() {
    std::vector<std::string> gates;
    const char* targets = "QRS";
    for (const char* kind : {"NOT", "UT"}) {
        for (int t = 0; t < 3; ++t) {
            const std::string base = std::string(kind) + ":" + targets[t];
            gates.push_back(base);
            gates.push_back(std::string(kind) + ":->" + targets[t]);
        }
    }
    for (const char* kind : {"CNOT", "CUT"}) {
        for (int c = 0; c < 3; ++c)
            for (int t = 0; t < 3; ++t)
                if (c != t) gates.push_back(std::string(kind) + ":" + targets[c] + "->" + targets[t]);
    }
    for (const char* kind : {"CCNOT", "CCUT"}) {
        gates.push_back(std::string(kind) + ":QR->S");
        gates.push_back(std::string(kind) + ":QS->R");
        gates.push_back(std::string(kind) + ":RS->Q");
    }
    for (auto& g : gates) {
        if (g.find("UT") != std::string::npos) g += "(1.234,-0.567)";
    }
    return gates;
}

Outcome cli_contract() {
    Outcome o;
    const std::string dir = VIRTSPIN_TEST_TMPDIR;
    int roundTrips = 0;
    const auto gates = grammar_gates();
    for (std::size_t k = 0; k < gates.size(); ++k) {
        const std::string path = dir + "/acceptance_" + std::to_string(k) + ".json";
        const int c = cli({"compile", gates[k], "--out", path});
        const int v = cli({"verify", "--schedule", path});
        const int d = cli({"verify", gates[k]});
        const bool ok = c == 0 && v == 0 && d == 0;
        o.require(ok, gates[k] + " exits " + std::to_string(c) + "/" + std::to_string(v) + "/" +
                          std::to_string(d));
        roundTrips += ok;
    }

    // Change one rotation angle in an otherwise valid schedule.
    const std::string path = dir + "/acceptance_corrupt.json";
    cli({"compile", "CNOT:R->S", "--out", path});
    std::string text;
    {
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    const std::string key = "\"angle_rad\": ";
    const auto at = text.find(key);
    int corrupted = -1;
    if (at != std::string::npos) {
        const auto end = text.find_first_of(",\n}", at);
        text.replace(at, end - at, key + "2.5");
        std::ofstream(path) << text;
        corrupted = cli({"verify", "--schedule", path});
    }
    o.require(corrupted == 1, "corrupted schedule exits " + std::to_string(corrupted));

    int malformedOk = 0;
    const std::vector<std::string> malformed = {"CCNOT:QQ->S", "CNOT:S->S", "NOT:X", "CCNOT:Q->S",
                                                "UT:S(1.0)", "TOFFOLI"};
    for (const auto& g : malformed) malformedOk += cli({"verify", g}) == 2 && cli({"compile", g}) == 2;
    o.require(malformedOk == static_cast<int>(malformed.size()), "malformed gate exit codes");

    o.note(std::to_string(roundTrips) + "/" + std::to_string(gates.size()) +
           " round trips exit 0, corrupted exits " + std::to_string(corrupted) + ", " +
           std::to_string(malformedOk) + "/" + std::to_string(malformed.size()) +
           " malformed exit 2");
    return o;
}

#else

Outcome cli_contract() { return {false, "built without the command-line tool"}; }

#endif

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"gate identities", gate_identities},
        {"truth tables", truth_tables},
        {"spectrum cross-check", spectrum_cross_check},
        {"forbidden-transition scaling", forbidden_transition_scaling},
        {"exact dynamics", exact_dynamics},
        {"algebra suites", algebra_suites},
        {"cli contract", cli_contract},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].name,
                    o.detail.c_str());
    }
    std::fflush(stdout);
    return failures == 0 ? 0 : 1;
}
