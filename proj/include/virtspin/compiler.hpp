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

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "virtspin/gates.hpp"
#include "virtspin/pulse.hpp"
#include "virtspin/spin_system.hpp"

namespace virtspin {

/// A tone plus the carrier frequency and length it resolved to against a
/// particular spectrum and drive amplitude.
struct ScheduledTone {
    Tone tone;
    std::optional<double> omega;     // rad per unit time
    std::optional<double> duration;  // empty for forbidden transitions
};

/// Simultaneous tones on pairwise disjoint level pairs.
struct PulseGroup {
    std::vector<ScheduledTone> tones;

    std::vector<Tone> bare_tones() const;
};

struct ScheduleResolution {
    SpectrumMethod method = SpectrumMethod::Exact;
    SpinSystem system;
    double gammaHrf = 1e-3;
};

/// Ordered pulse groups compiled from one or more gates.
struct PulseSchedule {
    std::vector<GateSpec> gates;
    std::vector<PulseGroup> groups;
    std::optional<ScheduleResolution> resolution;

    std::size_t tone_count() const;
};

/// One group with 1, 2 or 4 tones on the pairs the gate swaps. NOT-family
/// tones are pi rotations with phase 0 about X; the UT family uses the
/// gate's (angle, phase).
PulseSchedule compile(const GateSpec& spec);

/// Appends the groups of `next` after those of `first`.
PulseSchedule concatenate(const PulseSchedule& first, const PulseSchedule& next);

/// Fills carrier frequencies |E_m - E_n| and pulse lengths from `spectrum`.
/// Lengths are left empty for tones on transitions with a vanishing element.
PulseSchedule resolve(PulseSchedule schedule, const Spectrum& spectrum, const SpinSystem& sys,
                      double gammaHrf);

/// Ordered product of group propagators (later groups act last).
Mat8 schedule_propagator(const PulseSchedule& schedule);

enum class Verdict { Exact, EqualUpToI, EqualUpToGlobalPhase, Mismatch };

std::string_view to_string(Verdict verdict);

struct PhaseEntry {
    int row = 0;
    int col = 0;
    cplx factor;  // U(row, col) / target(row, col)
};

struct EquivalenceReport {
    Verdict verdict = Verdict::Mismatch;
    double maxDeviation = 0.0;
    std::vector<PhaseEntry> phaseMap;

    bool accepted() const { return verdict == Verdict::Exact || verdict == Verdict::EqualUpToI; }
};

/// Default entrywise tolerance for verdicts.
inline constexpr double kVerifyTolerance = 1e-12;

/// Target with every nonzero off-diagonal entry multiplied by i, which is
/// how the physical pulse realizations of the NOT family differ from the
/// textbook permutations.
Mat8 with_offdiagonal_i(const Mat8& target);

/// Compares `u` against an arbitrary target under the exact, times-i and
/// global-phase conventions.
EquivalenceReport compare(const Mat8& target, const Mat8& u, double tol = kVerifyTolerance);

EquivalenceReport verify(const GateSpec& spec, const Mat8& u, double tol = kVerifyTolerance);

/// What the compiled pulses produce for `spec`: the target with the extra
/// off-diagonal i for the NOT family, the target itself otherwise.
Mat8 physical_target(const GateSpec& spec);

/// Checks a gate sequence (first gate acts first). The phase map is taken
/// against the product of textbook targets, so accumulated i factors stay
/// visible; the verdict is equal-up-to-i when `u` matches the product of
/// physical targets.
EquivalenceReport verify_sequence(std::span<const GateSpec> gates, const Mat8& u,
                                  double tol = kVerifyTolerance);

struct TruthTableRow {
    int input = 0;
    int output = 0;
    cplx phase;
};

/// Classical readout of the compiled propagator. Throws NumericalError if a
/// column is not a single basis vector of unit modulus within 1e-10.
std::array<TruthTableRow, kDim> truth_table(const GateSpec& spec);
std::array<TruthTableRow, kDim> truth_table(const Mat8& u);

}  // namespace virtspin
