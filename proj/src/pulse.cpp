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

#include "virtspin/pulse.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "virtspin/error.hpp"

namespace virtspin {

namespace {

void check_level(int level, const char* what) {
    if (level < 0 || level >= kDim) {
        throw InputError(std::string(what) + " level " + std::to_string(level) +
                         " outside 0..7");
    }
}

}  // namespace

Projector projector(int m, int n) {
    check_level(m, "projector row");
    check_level(n, "projector column");
    Projector p{m, n, Mat8::Zero()};
    p.matrix(m, n) = 1.0;
    return p;
}

std::string_view to_string(Axis axis) { return axis == Axis::X ? "X" : "Y"; }

Axis parse_axis(std::string_view text) {
    if (text == "X" || text == "x") return Axis::X;
    if (text == "Y" || text == "y") return Axis::Y;
    throw InputError("axis must be X or Y, got '" + std::string(text) + "'");
}

double Tone::effective_phase() const { return axis == Axis::Y ? phase + kPi / 2.0 : phase; }

void Tone::validate() const {
    check_level(upper, "tone upper");
    check_level(lower, "tone lower");
    if (upper == lower) throw InputError("tone addresses a single level twice");
    if (!std::isfinite(angle) || !std::isfinite(phase)) {
        throw InputError("tone angle and phase must be finite");
    }
}

bool Tone::overlaps(const Tone& other) const {
    return upper == other.upper || upper == other.lower || lower == other.upper ||
           lower == other.lower;
}

Mat8 pulse_propagator(const Tone& tone) {
    tone.validate();
    const int m = tone.upper;
    const int n = tone.lower;
    const double half = 0.5 * tone.angle;
    const double f = tone.effective_phase();
    const cplx i{0.0, 1.0};

    Mat8 v = Mat8::Identity();
    v(m, m) += std::cos(half) - 1.0;
    v(n, n) += std::cos(half) - 1.0;
    v(m, n) = i * std::polar(1.0, f) * std::sin(half);
    v(n, m) = i * std::polar(1.0, -f) * std::sin(half);
    return v;
}

Mat8 multi_tone_propagator(std::span<const Tone> tones) {
    for (std::size_t a = 0; a < tones.size(); ++a) {
        for (std::size_t b = a + 1; b < tones.size(); ++b) {
            if (tones[a].overlaps(tones[b])) {
                std::ostringstream msg;
                msg << "simultaneous tones (" << tones[a].upper << "," << tones[a].lower
                    << ") and (" << tones[b].upper << "," << tones[b].lower
                    << ") share a level";
                throw InputError(msg.str());
            }
        }
    }
    Mat8 u = Mat8::Identity();
    for (const auto& tone : tones) u = pulse_propagator(tone) * u;
    return u;
}

double pulse_duration(double angle, const PulseParams& params, double ixElement) {
    if (!(params.gammaHrf > 0.0)) throw InputError("gammaHrf must be positive");
    if (!(ixElement > 0.0)) {
        throw ForbiddenTransitionError(
            "forbidden transition: infinite duration (matrix element is zero)");
    }
    return angle / (2.0 * params.gammaHrf * ixElement);
}

}  // namespace virtspin
