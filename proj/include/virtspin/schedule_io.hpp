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

#include <string>
#include <string_view>

#include "virtspin/compiler.hpp"

namespace virtspin {

/// Schedule file layout (JSON):
///
///   {
///     "format": "virtspin-schedule/1",
///     "gate": "CCNOT:QR->S",            // array of names for sequences
///     "spectrum_method": "exact",       // or "perturbative-first-order", null
///     "parameters": {"omega0": 1, "omegaQ": 0.01, "theta": 0.628..., "phi": 0,
///                    "q2_form": "as-printed", "gammaHrf": 0.001},
///     "groups": [[{"upper": 6, "lower": 7, "angle_rad": 3.14159...,
///                  "phase_rad": 0, "axis": "X",
///                  "omega": 0.88..., "duration": 1187.4...}]]
///   }
///
/// `omega` is in units of omega0 and `duration` in units of 1/omega0; both
/// are null when unresolved, `duration` also for forbidden transitions.
/// Reals are written in shortest round-trip form; with omega0 = 1 a
/// resolved schedule survives a round trip bit for bit.
std::string serialize_schedule(const PulseSchedule& schedule);

/// Throws InputError on malformed documents.
PulseSchedule parse_schedule(std::string_view text);

std::string_view to_string(Q2Form form);

}  // namespace virtspin
