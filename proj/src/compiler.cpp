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

#include "virtspin/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "virtspin/error.hpp"

namespace virtspin {

std::vector<Tone> PulseGroup::bare_tones() const {
    std::vector<Tone> out;
    out.reserve(tones.size());
    for (const auto& t : tones) out.push_back(t.tone);
    return out;
}

std::size_t PulseSchedule::tone_count() const {
    std::size_t n = 0;
    for (const auto& g : groups) n += g.tones.size();
    return n;
}

PulseSchedule compile(const GateSpec& spec) {
    spec.validate();
    const bool flip = is_not_family(spec.kind);
    PulseGroup group;
    for (auto [a, b] : active_pairs(spec)) {
        Tone tone;
        tone.upper = a;
        tone.lower = b;
        tone.angle = flip ? kPi : spec.angle;
        tone.phase = flip ? 0.0 : spec.phase;
        tone.axis = Axis::X;
        group.tones.push_back({tone, std::nullopt, std::nullopt});
    }
    PulseSchedule schedule;
    schedule.gates.push_back(spec);
    schedule.groups.push_back(std::move(group));
    return schedule;
}

PulseSchedule concatenate(const PulseSchedule& first, const PulseSchedule& next) {
    PulseSchedule out = first;
    out.gates.insert(out.gates.end(), next.gates.begin(), next.gates.end());
    out.groups.insert(out.groups.end(), next.groups.begin(), next.groups.end());
    if (!out.resolution) out.resolution = next.resolution;
    return out;
}

PulseSchedule resolve(PulseSchedule schedule, const Spectrum& spectrum, const SpinSystem& sys,
                      double gammaHrf) {
    const Mat8& ix = spin_operators().ix;
    const PulseParams params{gammaHrf, 0.0};
    for (auto& group : schedule.groups) {
        for (auto& st : group.tones) {
            const auto& t = st.tone;
            st.omega = std::abs(spectrum.energies(t.upper) - spectrum.energies(t.lower));
            const double element = std::abs(matrix_element(spectrum, ix, t.lower, t.upper));
            try {
                st.duration = pulse_duration(t.angle, params, element);
            } catch (const ForbiddenTransitionError&) {
                st.duration.reset();
            }
        }
    }
    schedule.resolution = ScheduleResolution{spectrum.method, sys, gammaHrf};
    return schedule;
}

Mat8 schedule_propagator(const PulseSchedule& schedule) {
    Mat8 u = Mat8::Identity();
    for (const auto& group : schedule.groups) {
        const auto tones = group.bare_tones();
        u = multi_tone_propagator(tones) * u;
    }
    return u;
}

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Exact: return "exact";
        case Verdict::EqualUpToI: return "equal-up-to-i";
        case Verdict::EqualUpToGlobalPhase: return "equal-up-to-global-phase";
        case Verdict::Mismatch: return "mismatch";
    }
    return "?";
}

Mat8 with_offdiagonal_i(const Mat8& target) {
    Mat8 out = target;
    const cplx i{0.0, 1.0};
    for (int r = 0; r < kDim; ++r) {
        for (int c = 0; c < kDim; ++c) {
            if (r != c && target(r, c) != cplx{0.0, 0.0}) out(r, c) *= i;
        }
    }
    return out;
}

EquivalenceReport compare(const Mat8& target, const Mat8& u, double tol) {
    EquivalenceReport report;
    for (int r = 0; r < kDim; ++r) {
        for (int c = 0; c < kDim; ++c) {
            if (std::abs(target(r, c)) > tol) {
                report.phaseMap.push_back({r, c, u(r, c) / target(r, c)});
            }
        }
    }

    const double exact = max_abs(u - target);
    const double timesI = max_abs(u - with_offdiagonal_i(target));

    // Best global phase: maximize Re(e^{-ia} tr(target^dagger u)).
    const cplx overlap = (target.adjoint() * u).trace();
    const cplx global = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx{1.0, 0.0};
    const double phased = max_abs(u - global * target);

    if (exact < tol) {
        report.verdict = Verdict::Exact;
        report.maxDeviation = exact;
    } else if (timesI < tol) {
        report.verdict = Verdict::EqualUpToI;
        report.maxDeviation = timesI;
    } else if (phased < tol) {
        report.verdict = Verdict::EqualUpToGlobalPhase;
        report.maxDeviation = phased;
    } else {
        report.verdict = Verdict::Mismatch;
        report.maxDeviation = std::min({exact, timesI, phased});
    }
    return report;
}

EquivalenceReport verify(const GateSpec& spec, const Mat8& u, double tol) {
    return compare(target_gate(spec), u, tol);
}

Mat8 physical_target(const GateSpec& spec) {
    const Mat8 target = target_gate(spec);
    return is_not_family(spec.kind) ? with_offdiagonal_i(target) : target;
}

EquivalenceReport verify_sequence(std::span<const GateSpec> gates, const Mat8& u, double tol) {
    if (gates.size() == 1) return verify(gates.front(), u, tol);
    Mat8 textbook = Mat8::Identity();
    Mat8 physical = Mat8::Identity();
    for (const auto& g : gates) {
        textbook = target_gate(g) * textbook;
        physical = physical_target(g) * physical;
    }
    EquivalenceReport report = compare(textbook, u, tol);
    if (!report.accepted()) {
        const double deviation = max_abs(u - physical);
        if (deviation < tol) {
            report.verdict = Verdict::EqualUpToI;
            report.maxDeviation = deviation;
        } else {
            report.maxDeviation = std::min(report.maxDeviation, deviation);
        }
    }
    return report;
}

std::array<TruthTableRow, kDim> truth_table(const Mat8& u) {
    constexpr double kTol = 1e-10;
    std::array<TruthTableRow, kDim> rows{};
    for (int in = 0; in < kDim; ++in) {
        int out = -1;
        for (int r = 0; r < kDim; ++r) {
            const double mod = std::abs(u(r, in));
            if (std::abs(mod - 1.0) < kTol) {
                out = r;
            } else if (mod > kTol) {
                out = -2;
                break;
            }
        }
        if (out < 0) {
            std::ostringstream msg;
            msg << "column " << in << " of the propagator is not a basis vector";
            throw NumericalError(msg.str());
        }
        rows[static_cast<std::size_t>(in)] = {in, out, u(out, in)};
    }
    return rows;
}

std::array<TruthTableRow, kDim> truth_table(const GateSpec& spec) {
    if (!is_not_family(spec.kind)) {
        throw InputError("truth tables are defined for NOT, CNOT and CCNOT only");
    }
    return truth_table(schedule_propagator(compile(spec)));
}

}  // namespace virtspin
