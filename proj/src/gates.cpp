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

#include "virtspin/gates.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>

#include "virtspin/error.hpp"

namespace virtspin {

namespace {

constexpr std::string_view kGrammarHint =
    "expected KIND:CONTROLS->TARGET, e.g. NOT:S, CNOT:R->Q, CCNOT:QR->S, "
    "CCUT:QR->S(phi,f)";

[[noreturn]] void bad_gate(std::string_view text, std::string_view why) {
    throw InputError("cannot parse gate '" + std::string(text) + "': " + std::string(why) +
                     " (" + std::string(kGrammarHint) + ")");
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::optional<VirtualSpin> spin_from_char(char c) {
    switch (c) {
        case 'Q': return VirtualSpin::Q;
        case 'R': return VirtualSpin::R;
        case 'S': return VirtualSpin::S;
        default: return std::nullopt;
    }
}

std::optional<GateKind> kind_from_string(std::string_view s) {
    for (auto kind : {GateKind::NOT, GateKind::CNOT, GateKind::CCNOT, GateKind::UT,
                      GateKind::CUT, GateKind::CCUT}) {
        if (to_string(kind) == s) return kind;
    }
    return std::nullopt;
}

std::optional<double> parse_real(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    std::string buf(s);
    char* end = nullptr;
    const double value = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

char to_char(VirtualSpin spin) {
    switch (spin) {
        case VirtualSpin::Q: return 'Q';
        case VirtualSpin::R: return 'R';
        case VirtualSpin::S: return 'S';
    }
    return '?';
}

VirtualLabel encode(int level) {
    if (level < 0 || level >= kDim) {
        throw InputError("level " + std::to_string(level) + " outside 0..7");
    }
    return {level, {(level >> 2) & 1, (level >> 1) & 1, level & 1}};
}

int decode(const std::array<int, 3>& bits) {
    for (int b : bits) {
        if (b != 0 && b != 1) throw InputError("virtual spin bits must be 0 or 1");
    }
    return 4 * bits[0] + 2 * bits[1] + bits[2];
}

std::string_view to_string(GateKind kind) {
    switch (kind) {
        case GateKind::NOT: return "NOT";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CCNOT: return "CCNOT";
        case GateKind::UT: return "UT";
        case GateKind::CUT: return "CUT";
        case GateKind::CCUT: return "CCUT";
    }
    return "?";
}

bool is_not_family(GateKind kind) {
    return kind == GateKind::NOT || kind == GateKind::CNOT || kind == GateKind::CCNOT;
}

int control_count(GateKind kind) {
    switch (kind) {
        case GateKind::NOT:
        case GateKind::UT: return 0;
        case GateKind::CNOT:
        case GateKind::CUT: return 1;
        case GateKind::CCNOT:
        case GateKind::CCUT: return 2;
    }
    return -1;
}

void GateSpec::validate() const {
    if (static_cast<int>(controls.size()) != control_count(kind)) {
        throw InputError(std::string(to_string(kind)) + " needs " +
                         std::to_string(control_count(kind)) + " control spin(s), got " +
                         std::to_string(controls.size()));
    }
    int seen = 0;
    for (auto c : controls) {
        if (c == target) throw InputError("control spin coincides with target");
        if (seen & bit_mask(c)) throw InputError("duplicate control spin");
        seen |= bit_mask(c);
    }
    if (!std::isfinite(angle) || !std::isfinite(phase)) {
        throw InputError("gate angle and phase must be finite");
    }
}

int GateSpec::control_mask() const {
    int mask = 0;
    for (auto c : controls) mask |= bit_mask(c);
    return mask;
}

std::string GateSpec::name() const {
    std::string out(to_string(kind));
    out += ':';
    auto sorted = controls;
    std::sort(sorted.begin(), sorted.end());
    for (auto c : sorted) out += to_char(c);
    if (!sorted.empty()) out += "->";
    out += to_char(target);
    if (!is_not_family(kind)) {
        out += '(' + format_real(angle) + ',' + format_real(phase) + ')';
    }
    return out;
}

bool operator==(const GateSpec& a, const GateSpec& b) {
    return a.kind == b.kind && a.target == b.target && a.control_mask() == b.control_mask() &&
           (is_not_family(a.kind) || (a.angle == b.angle && a.phase == b.phase));
}

GateSpec parse_gate(std::string_view text) {
    const std::string_view whole = trim(text);
    const auto colon = whole.find(':');
    if (colon == std::string_view::npos) bad_gate(text, "missing ':'");

    const auto kind = kind_from_string(trim(whole.substr(0, colon)));
    if (!kind) bad_gate(text, "unknown gate kind");

    GateSpec spec;
    spec.kind = *kind;
    std::string_view rest = trim(whole.substr(colon + 1));

    if (!is_not_family(spec.kind)) {
        const auto open = rest.find('(');
        if (open == std::string_view::npos || rest.back() != ')') {
            bad_gate(text, "unitary gates need a (phi,f) suffix");
        }
        const auto args = rest.substr(open + 1, rest.size() - open - 2);
        const auto comma = args.find(',');
        if (comma == std::string_view::npos) bad_gate(text, "expected two parameters");
        const auto angle = parse_real(args.substr(0, comma));
        const auto phase = parse_real(args.substr(comma + 1));
        if (!angle || !phase) bad_gate(text, "parameters must be finite real numbers");
        spec.angle = *angle;
        spec.phase = *phase;
        rest = trim(rest.substr(0, open));
    } else if (rest.find('(') != std::string_view::npos) {
        bad_gate(text, "NOT-family gates take no parameters");
    }

    std::string_view controls;
    std::string_view target = rest;
    if (const auto arrow = rest.find("->"); arrow != std::string_view::npos) {
        controls = trim(rest.substr(0, arrow));
        target = trim(rest.substr(arrow + 2));
    }
    if (target.size() != 1 || !spin_from_char(target[0])) bad_gate(text, "bad target spin");
    spec.target = *spin_from_char(target[0]);
    for (char c : controls) {
        const auto spin = spin_from_char(c);
        if (!spin) bad_gate(text, "bad control spin");
        spec.controls.push_back(*spin);
    }
    try {
        spec.validate();
    } catch (const InputError& e) {
        bad_gate(text, e.what());
    }
    return spec;
}

std::vector<std::pair<int, int>> active_pairs(const GateSpec& spec) {
    spec.validate();
    const int targetBit = bit_mask(spec.target);
    const int controlMask = spec.control_mask();
    std::vector<std::pair<int, int>> pairs;
    for (int level = 0; level < kDim; ++level) {
        if ((level & targetBit) == 0 && (level & controlMask) == controlMask) {
            pairs.emplace_back(level, level | targetBit);
        }
    }
    return pairs;
}

Mat8 target_gate(const GateSpec& spec) {
    Mat8 gate = Mat8::Identity();
    const bool flip = is_not_family(spec.kind);
    const double half = 0.5 * spec.angle;
    const cplx i{0.0, 1.0};
    for (auto [a, b] : active_pairs(spec)) {
        if (flip) {
            gate(a, a) = 0.0;
            gate(b, b) = 0.0;
            gate(a, b) = 1.0;
            gate(b, a) = 1.0;
        } else {
            gate(a, a) = std::cos(half);
            gate(b, b) = std::cos(half);
            gate(a, b) = i * std::polar(1.0, spec.phase) * std::sin(half);
            gate(b, a) = i * std::polar(1.0, -spec.phase) * std::sin(half);
        }
    }
    return gate;
}

bool is_involution(const Mat8& gate, double tol) {
    return max_abs(gate * gate - Mat8::Identity()) < tol;
}

std::vector<GateSpec> not_family_gates() {
    using V = VirtualSpin;
    std::vector<GateSpec> out;
    for (V t : {V::Q, V::R, V::S}) out.push_back({GateKind::NOT, t, {}});
    for (V c : {V::Q, V::R, V::S}) {
        for (V t : {V::Q, V::R, V::S}) {
            if (c != t) out.push_back({GateKind::CNOT, t, {c}});
        }
    }
    out.push_back({GateKind::CCNOT, V::S, {V::Q, V::R}});
    out.push_back({GateKind::CCNOT, V::R, {V::Q, V::S}});
    out.push_back({GateKind::CCNOT, V::Q, {V::R, V::S}});
    return out;
}

}  // namespace virtspin
