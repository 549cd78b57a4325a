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
#include <string>
#include <string_view>
#include <vector>

#include "virtspin/linalg.hpp"

namespace virtspin {

/// The three virtual spins-1/2 stored in the eight levels. Q is the most
/// significant bit of the level index, S the least.
enum class VirtualSpin { Q = 0, R = 1, S = 2 };

char to_char(VirtualSpin spin);

/// Bit weight of a virtual spin inside the level index M = 4 m_Q + 2 m_R + m_S.
constexpr int bit_mask(VirtualSpin spin) { return 4 >> static_cast<int>(spin); }

/// Level index together with its virtual-spin bits (1 for m = +1/2).
struct VirtualLabel {
    int level = 0;
    std::array<int, 3> bits{};  // (m_Q, m_R, m_S)

    int bit(VirtualSpin spin) const { return bits[static_cast<std::size_t>(spin)]; }
};

VirtualLabel encode(int level);
int decode(const std::array<int, 3>& bits);

enum class GateKind { NOT, CNOT, CCNOT, UT, CUT, CCUT };

std::string_view to_string(GateKind kind);
bool is_not_family(GateKind kind);
int control_count(GateKind kind);

/// Symbolic gate: a (possibly controlled) operation on one virtual spin.
/// For the UT family, (angle, phase) parameterize the two-level block
///   [[cos(a/2), i e^{if} sin(a/2)], [i e^{-if} sin(a/2), cos(a/2)]].
struct GateSpec {
    GateKind kind = GateKind::NOT;
    VirtualSpin target = VirtualSpin::S;
    std::vector<VirtualSpin> controls;
    double angle = kPi;
    double phase = 0.0;

    /// Throws InputError on wrong control count, duplicate or target-valued
    /// controls, or non-finite parameters.
    void validate() const;
    int control_mask() const;
    /// Canonical gate string, e.g. "CCNOT:QR->S", "NOT:S", "CUT:R->Q(1.2,0.4)".
    std::string name() const;
};

bool operator==(const GateSpec& a, const GateSpec& b);

/// Parses KIND ":" CONTROLS "->" TARGET, optionally followed by "(phi,f)"
/// for the UT family. "NOT:S" and "NOT:->S" are both accepted.
GateSpec parse_gate(std::string_view text);

/// Level pairs (target bit 0, target bit 1) on which the gate acts, with all
/// control bits set. Sorted by the first index.
std::vector<std::pair<int, int>> active_pairs(const GateSpec& spec);

/// Permutation matrix for NOT/CNOT/CCNOT with real unit entries; block
/// unitary for UT/CUT/CCUT.
Mat8 target_gate(const GateSpec& spec);

bool is_involution(const Mat8& gate, double tol = 1e-12);

/// The twelve NOT-family gates: 3 NOT, 6 CNOT, 3 CCNOT.
std::vector<GateSpec> not_family_gates();

}  // namespace virtspin
