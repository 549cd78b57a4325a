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

#include <span>
#include <string_view>

#include "virtspin/linalg.hpp"

namespace virtspin {

/// Matrix unit |psi_m><psi_n|.
struct Projector {
    int m = 0;
    int n = 0;
    Mat8 matrix;
};

/// Throws InputError for indices outside 0..7.
Projector projector(int m, int n);

enum class Axis { X, Y };

std::string_view to_string(Axis axis);
Axis parse_axis(std::string_view text);

/// One resonant tone addressing the level pair (upper, lower), where the
/// upper level has the higher energy.
struct Tone {
    int upper = 0;
    int lower = 1;
    double angle = kPi;
    double phase = 0.0;
    Axis axis = Axis::X;

    /// Phase entering the propagator: phase for X, phase + pi/2 for Y.
    double effective_phase() const;
    /// Throws InputError on bad levels or non-finite angle/phase.
    void validate() const;
    bool overlaps(const Tone& other) const;
};

struct PulseParams {
    double gammaHrf = 1e-3;
    double t0 = 0.0;
};

/// Two-level rotation
///   1 + (P_nn + P_mm)(cos(a/2) - 1) + i (P_mn e^{if} + P_nm e^{-if}) sin(a/2)
/// with m = upper, n = lower. The angle is used as given, never reduced.
Mat8 pulse_propagator(const Tone& tone);

/// Product of per-tone propagators for simultaneous tones. Throws InputError
/// if two tones share a level.
Mat8 multi_tone_propagator(std::span<const Tone> tones);

/// Pulse length t - t0 = angle / (2 gammaHrf |<n|I_x|m>|). Throws
/// ForbiddenTransitionError when the element vanishes.
double pulse_duration(double angle, const PulseParams& params, double ixElement);

}  // namespace virtspin
