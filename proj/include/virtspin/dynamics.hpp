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

#include <cstddef>
#include <span>
#include <vector>

#include "virtspin/compiler.hpp"
#include "virtspin/pulse.hpp"
#include "virtspin/spin_system.hpp"

namespace virtspin {

/// One linearly polarized RF component contributing
///   -amplitude * I_axis * cos(frequency * t + phase)
/// to the laboratory Hamiltonian. Its co-rotating part has strength
/// amplitude / 2, which is the gammaHrf that sets rotation angles.
struct DriveTone {
    double frequency = 1.0;
    double amplitude = 0.0;
    double phase = 0.0;
    Axis axis = Axis::X;
};

enum class Frame {
    Lab,
    /// Frame rotating with the Zeeman term, |psi_rot> = exp(i H_z t)|psi_lab>.
    RotatingAtOmega0,
};

struct DriveSpec {
    std::vector<DriveTone> tones;
    double duration = 0.0;
    /// Absolute start time; carrier phases refer to t = 0.
    double start = 0.0;
    Frame frame = Frame::Lab;
};

enum class IntegrationMethod {
    /// Hamiltonian frozen at each slice midpoint, exact exponential per slice.
    PiecewiseConstant,
    /// Fourth-order Magnus step from two Gauss-Legendre samples per slice.
    Magnus4,
};

struct IntegrationConfig {
    int stepsPerShortestPeriod = 64;
    IntegrationMethod method = IntegrationMethod::Magnus4;
    /// Refuse runs needing more slices than this.
    std::size_t maxSteps = 20'000'000;
};

inline constexpr int kMinStepsPerPeriod = 20;

/// Time-dependent Hamiltonian in the requested frame, in the I_z basis.
Mat8 drive_hamiltonian(const SpinSystem& sys, const DriveSpec& drive, double t);

/// Number of slices evolve() will use. Throws ResolutionError when the
/// configured resolution is below kMinStepsPerPeriod or above maxSteps.
std::size_t slice_count(const SpinSystem& sys, const DriveSpec& drive,
                        const IntegrationConfig& cfg);

/// Time-ordered propagator from drive.start to drive.start + duration, in
/// the I_z basis of the requested frame.
Mat8 evolve(const SpinSystem& sys, const DriveSpec& drive, const IntegrationConfig& cfg = {});

/// exp(i H_static t1) U exp(-i H_static t0) expressed in the eigenbasis of
/// `spectrum`, where the pulse_propagator model applies.
Mat8 to_interaction_frame(const Spectrum& spectrum, const Mat8& labPropagator, double t0,
                          double t1);

/// Physical drive that realizes simultaneous tones of equal length. The
/// slowest tone runs at gammaHrf; the others are weakened to finish
/// together. Carrier phases compensate the phase of each transition
/// element, so the interaction-frame result matches pulse_propagator.
/// Frequencies default to |E_m - E_n| of `spectrum` unless `omegas` supplies
/// one per tone. Throws ForbiddenTransitionError for a vanishing element.
DriveSpec drive_for_tones(const Spectrum& spectrum, std::span<const Tone> tones, double gammaHrf,
                          std::span<const double> omegas = {});

/// max |interaction-frame evolve(...) - pulse_propagator(tone)| on the
/// exact spectrum. Zero for a zero-length pulse.
double rwa_deviation(const SpinSystem& sys, const Tone& tone, const PulseParams& params,
                     const IntegrationConfig& cfg = {});

struct ScheduleSimulation {
    Mat8 lab;           // I_z basis
    Mat8 interaction;   // exact eigenbasis
    Mat8 ideal;         // schedule_propagator
    double deviation = 0.0;
    double totalDuration = 0.0;
};

/// Plays every group of `schedule` back to back on the exact Hamiltonian.
/// Uses the schedule's stored carrier frequencies when present.
ScheduleSimulation simulate_schedule(const SpinSystem& sys, const PulseSchedule& schedule,
                                     double gammaHrf, const IntegrationConfig& cfg = {});

struct ScalingPoint {
    double ratio = 0.0;    // omegaQ / omega0
    double element = 0.0;  // |<psi_lower|I_x|psi_upper>|
    double windowSlope = 0.0;
};

struct ScalingSweep {
    int upper = 0;
    int lower = 0;
    std::vector<ScalingPoint> points;
    /// Least-squares slope of log(element) against log(ratio).
    double slope = 0.0;
    bool degenerate = false;
};

/// Log-spaced sweep of omegaQ/omega0 over [lo, hi] on the exact spectrum.
/// Points are evaluated concurrently. `windowSlope` is the local log-log
/// slope between neighbouring samples (one-sided at the ends).
ScalingSweep scaling_sweep(const SpinSystem& base, int upper, int lower, double lo, double hi,
                           int points);

/// Fitted slope of scaling_sweep. Throws DegenerateFitError when every
/// element is below kNegligibleElement.
double forbidden_scaling(const SpinSystem& base, int upper, int lower, double lo = 1e-4,
                         double hi = 1e-2, int points = 20);

inline constexpr double kNegligibleElement = 1e-14;

struct TradeoffRow {
    double gammaHrf = 0.0;
    double duration = 0.0;
    bool exceedsBudget = false;
};

inline constexpr double kDefaultCoherenceBudget = 1e5;

/// Pulse length needed for `angle` on a pair at each drive amplitude.
/// Throws ForbiddenTransitionError when the pair's element vanishes.
std::vector<TradeoffRow> pulse_strength_tradeoff(const SpinSystem& sys, int upper, int lower,
                                                 double angle,
                                                 std::span<const double> amplitudes,
                                                 double budget = kDefaultCoherenceBudget);

}  // namespace virtspin
