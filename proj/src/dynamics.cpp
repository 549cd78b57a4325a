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

#include "virtspin/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "virtspin/error.hpp"

namespace virtspin {

namespace {

const Mat8& axis_operator(Axis axis) {
    return axis == Axis::X ? spin_operators().ix : spin_operators().iy;
}

// Samples H(t) in either frame with the static pieces built once.
class HamiltonianSampler {
  public:
    HamiltonianSampler(const SpinSystem& sys, const DriveSpec& drive)
        : drive_(drive), frame_(drive.frame) {
        if (frame_ == Frame::Lab) {
            static_ = build_hamiltonian(sys);
        } else {
            static_ = build_quadrupole(sys);
            for (int j = 0; j < kDim; ++j) zeeman_(j) = -sys.omega0 * m_of_level(j);
        }
    }

    Mat8 operator()(double t) const {
        Mat8 h = static_;
        for (const auto& tone : drive_.tones) {
            if (tone.amplitude == 0.0) continue;
            h -= (tone.amplitude * std::cos(tone.frequency * t + tone.phase)) *
                 axis_operator(tone.axis);
        }
        if (frame_ == Frame::RotatingAtOmega0) {
            for (int j = 0; j < kDim; ++j) {
                for (int k = 0; k < kDim; ++k) {
                    if (j != k) h(j, k) *= std::polar(1.0, (zeeman_(j) - zeeman_(k)) * t);
                }
            }
        }
        return h;
    }

  private:
    const DriveSpec& drive_;
    Frame frame_;
    Mat8 static_;
    RealVec8 zeeman_ = RealVec8::Zero();
};

// Highest angular frequency at which the frame Hamiltonian varies; zero if
// it is static.
double fastest_frequency(const SpinSystem& sys, const DriveSpec& drive) {
    double carrier = 0.0;
    bool driven = false;
    for (const auto& tone : drive.tones) {
        if (tone.amplitude == 0.0) continue;
        driven = true;
        carrier = std::max(carrier, std::abs(tone.frequency));
    }
    if (drive.frame == Frame::Lab) return carrier;
    // Zeeman-frame phases reach 2 omega0 on the Delta m = 2 quadrupole terms
    // and omega0 on the drive.
    double fastest = sys.omegaQ > 0.0 ? 2.0 * sys.omega0 : 0.0;
    if (driven) fastest = std::max(fastest, carrier + sys.omega0);
    return fastest;
}

void validate_drive(const DriveSpec& drive) {
    if (!(drive.duration >= 0.0) || !std::isfinite(drive.duration)) {
        throw InputError("drive duration must be finite and non-negative");
    }
    for (const auto& tone : drive.tones) {
        if (!(tone.amplitude >= 0.0) || !std::isfinite(tone.frequency) ||
            !std::isfinite(tone.phase)) {
            throw InputError("drive tones need finite frequency/phase and amplitude >= 0");
        }
    }
}

}  // namespace

Mat8 drive_hamiltonian(const SpinSystem& sys, const DriveSpec& drive, double t) {
    return HamiltonianSampler(sys, drive)(t);
}

std::size_t slice_count(const SpinSystem& sys, const DriveSpec& drive,
                        const IntegrationConfig& cfg) {
    if (cfg.stepsPerShortestPeriod < kMinStepsPerPeriod) {
        std::ostringstream msg;
        msg << "integration under-resolved: " << cfg.stepsPerShortestPeriod
            << " steps per shortest period, need at least " << kMinStepsPerPeriod;
        throw ResolutionError(msg.str());
    }
    if (drive.duration == 0.0) return 0;
    const double fastest = fastest_frequency(sys, drive);
    if (fastest == 0.0) return 1;
    const double period = 2.0 * kPi / fastest;
    const double steps = std::ceil(drive.duration / period * cfg.stepsPerShortestPeriod);
    if (steps > static_cast<double>(cfg.maxSteps)) {
        std::ostringstream msg;
        msg << "integration would need " << steps << " slices (limit " << cfg.maxSteps
            << "); drive is too weak for this transition";
        throw ResolutionError(msg.str());
    }
    return static_cast<std::size_t>(steps);
}

Mat8 evolve(const SpinSystem& sys, const DriveSpec& drive, const IntegrationConfig& cfg) {
    sys.validate();
    validate_drive(drive);
    const std::size_t steps = slice_count(sys, drive, cfg);
    const HamiltonianSampler hamiltonian(sys, drive);

    Mat8 u = Mat8::Identity();
    if (steps == 0) return u;
    const double dt = drive.duration / static_cast<double>(steps);

    // Gauss-Legendre nodes on [0, 1].
    const double offset = std::sqrt(3.0) / 6.0;
    const double c1 = 0.5 - offset;
    const double c2 = 0.5 + offset;
    const cplx i{0.0, 1.0};

    for (std::size_t s = 0; s < steps; ++s) {
        const double t = drive.start + static_cast<double>(s) * dt;
        Mat8 generator;
        if (cfg.method == IntegrationMethod::PiecewiseConstant) {
            generator = hamiltonian(t + 0.5 * dt) * dt;
        } else {
            const Mat8 h1 = hamiltonian(t + c1 * dt);
            const Mat8 h2 = hamiltonian(t + c2 * dt);
            generator = 0.5 * dt * (h1 + h2) -
                        (i * std::sqrt(3.0) * dt * dt / 12.0) * commutator(h2, h1);
        }
        u = expm_hermitian(generator, 1.0) * u;
    }
    return u;
}

Mat8 to_interaction_frame(const Spectrum& spectrum, const Mat8& labPropagator, double t0,
                          double t1) {
    Vec8 later;
    Vec8 earlier;
    for (int k = 0; k < kDim; ++k) {
        later(k) = std::polar(1.0, spectrum.energies(k) * t1);
        earlier(k) = std::polar(1.0, -spectrum.energies(k) * t0);
    }
    return later.asDiagonal() * (spectrum.states.adjoint() * labPropagator * spectrum.states) *
           earlier.asDiagonal();
}

DriveSpec drive_for_tones(const Spectrum& spectrum, std::span<const Tone> tones, double gammaHrf,
                          std::span<const double> omegas) {
    if (!(gammaHrf > 0.0)) throw InputError("gammaHrf must be positive");
    if (!omegas.empty() && omegas.size() != tones.size()) {
        throw InputError("need one carrier frequency per tone");
    }

    struct Prepared {
        DriveTone drive;
        double angle;
        double element;
    };
    std::vector<Prepared> prepared;
    double duration = 0.0;
    const PulseParams params{gammaHrf, 0.0};

    for (std::size_t k = 0; k < tones.size(); ++k) {
        const Tone& tone = tones[k];
        tone.validate();
        if (tone.angle == 0.0) continue;
        const cplx element =
            matrix_element(spectrum, axis_operator(tone.axis), tone.upper, tone.lower);
        const double magnitude = std::abs(element);
        const double angle = std::abs(tone.angle);
        duration = std::max(duration, pulse_duration(angle, params, magnitude));

        // A negative rotation is a positive one with the phase advanced by pi.
        double target = tone.effective_phase();
        if (tone.angle < 0.0) target += kPi;

        DriveTone d;
        d.axis = tone.axis;
        d.frequency = omegas.empty()
                          ? std::abs(spectrum.energies(tone.upper) - spectrum.energies(tone.lower))
                          : omegas[k];
        // The co-rotating component picks the sign of the carrier phase.
        const bool upperIsHigher = spectrum.energies(tone.upper) > spectrum.energies(tone.lower);
        d.phase = upperIsHigher ? std::arg(element) - target : target - std::arg(element);
        prepared.push_back({d, angle, magnitude});
    }

    DriveSpec spec;
    spec.duration = duration;
    for (auto& p : prepared) {
        // Co-rotating strength angle / (2 T |element|); the linear field is twice that.
        p.drive.amplitude = p.angle / (duration * p.element);
        spec.tones.push_back(p.drive);
    }
    return spec;
}

double rwa_deviation(const SpinSystem& sys, const Tone& tone, const PulseParams& params,
                     const IntegrationConfig& cfg) {
    const Spectrum spectrum = exact_spectrum(sys);
    const Tone tones[] = {tone};
    DriveSpec drive = drive_for_tones(spectrum, tones, params.gammaHrf);
    drive.start = params.t0;
    const Mat8 ideal = pulse_propagator(tone);
    if (drive.duration == 0.0) return max_abs(Mat8::Identity() - ideal);
    const Mat8 lab = evolve(sys, drive, cfg);
    const Mat8 interaction =
        to_interaction_frame(spectrum, lab, drive.start, drive.start + drive.duration);
    return max_abs(interaction - ideal);
}

ScheduleSimulation simulate_schedule(const SpinSystem& sys, const PulseSchedule& schedule,
                                     double gammaHrf, const IntegrationConfig& cfg) {
    const Spectrum spectrum = exact_spectrum(sys);
    ScheduleSimulation out;
    out.lab = Mat8::Identity();
    out.ideal = schedule_propagator(schedule);

    double t = 0.0;
    for (const auto& group : schedule.groups) {
        const auto tones = group.bare_tones();
        std::vector<double> omegas;
        const bool stored = std::all_of(group.tones.begin(), group.tones.end(),
                                        [](const ScheduledTone& st) { return st.omega.has_value(); });
        if (stored) {
            for (const auto& st : group.tones) omegas.push_back(*st.omega);
        }
        DriveSpec drive = drive_for_tones(spectrum, tones, gammaHrf, omegas);
        drive.start = t;
        if (drive.duration > 0.0) out.lab = evolve(sys, drive, cfg) * out.lab;
        t += drive.duration;
    }
    out.totalDuration = t;
    out.interaction = to_interaction_frame(spectrum, out.lab, 0.0, t);
    out.deviation = max_abs(out.interaction - out.ideal);
    return out;
}

ScalingSweep scaling_sweep(const SpinSystem& base, int upper, int lower, double lo, double hi,
                           int points) {
    base.validate();
    if (!(lo > 0.0) || !(hi > lo) || points < 2) {
        throw InputError("sweep needs 0 < lo < hi and at least two points");
    }
    if (upper < 0 || upper >= kDim || lower < 0 || lower >= kDim || upper == lower) {
        throw InputError("sweep pair must be two distinct levels in 0..7");
    }

    ScalingSweep sweep;
    sweep.upper = upper;
    sweep.lower = lower;
    sweep.points.resize(static_cast<std::size_t>(points));

    const double step = std::log(hi / lo) / (points - 1);
    std::vector<std::future<double>> pending;
    pending.reserve(sweep.points.size());
    for (int k = 0; k < points; ++k) {
        const double ratio = k + 1 == points ? hi : lo * std::exp(step * k);
        sweep.points[static_cast<std::size_t>(k)].ratio = ratio;
        SpinSystem sys = base;
        sys.omegaQ = ratio * base.omega0;
        pending.push_back(std::async(std::launch::async, [sys, upper, lower] {
            const Spectrum s = exact_spectrum(sys);
            return std::abs(matrix_element(s, spin_operators().ix, lower, upper));
        }));
    }
    for (std::size_t k = 0; k < pending.size(); ++k) sweep.points[k].element = pending[k].get();

    const auto logOf = [](const ScalingPoint& p) { return std::log(p.element); };
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = 0; k < sweep.points.size(); ++k) {
        const std::size_t a = k == 0 ? 0 : k - 1;
        const std::size_t b = k + 1 == sweep.points.size() ? k : k + 1;
        const auto& pa = sweep.points[a];
        const auto& pb = sweep.points[b];
        sweep.points[k].windowSlope =
            (pa.element > kNegligibleElement && pb.element > kNegligibleElement)
                ? (logOf(pb) - logOf(pa)) / std::log(pb.ratio / pa.ratio)
                : nan;
    }

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int used = 0;
    for (const auto& p : sweep.points) {
        if (!(p.element > kNegligibleElement)) continue;
        const double x = std::log(p.ratio);
        const double y = std::log(p.element);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++used;
    }
    if (used < 2) {
        sweep.degenerate = true;
        sweep.slope = nan;
    } else {
        sweep.slope = (used * sxy - sx * sy) / (used * sxx - sx * sx);
    }
    return sweep;
}

double forbidden_scaling(const SpinSystem& base, int upper, int lower, double lo, double hi,
                         int points) {
    const ScalingSweep sweep = scaling_sweep(base, upper, lower, lo, hi, points);
    if (sweep.degenerate) {
        std::ostringstream msg;
        msg << "degenerate fit: every element of pair (" << upper << "," << lower
            << ") is below " << kNegligibleElement << " (no quadrupole mixing at theta="
            << base.theta << ")";
        throw DegenerateFitError(msg.str());
    }
    return sweep.slope;
}

std::vector<TradeoffRow> pulse_strength_tradeoff(const SpinSystem& sys, int upper, int lower,
                                                 double angle,
                                                 std::span<const double> amplitudes,
                                                 double budget) {
    const Spectrum spectrum = exact_spectrum(sys);
    const double element = std::abs(matrix_element(spectrum, spin_operators().ix, lower, upper));
    std::vector<TradeoffRow> rows;
    rows.reserve(amplitudes.size());
    for (double g : amplitudes) {
        const double t = pulse_duration(angle, PulseParams{g, 0.0}, element);
        rows.push_back({g, t, t > budget});
    }
    return rows;
}

}  // namespace virtspin
