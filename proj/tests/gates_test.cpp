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

#include <cmath>
#include <set>

#include "gtest/gtest.h"

#include "virtspin/error.hpp"

using namespace virtspin;

namespace {

// Flip the target bit whenever every control bit is set.
Mat8 permutation_oracle(int targetBit, int controlBits) {
    Mat8 p = Mat8::Zero();
    for (int in = 0; in < kDim; ++in) {
        const int out = (in & controlBits) == controlBits ? in ^ targetBit : in;
        p(out, in) = 1.0;
    }
    return p;
}

}  // namespace

TEST(encoding, round_trip_and_bit_weights) {
    for (int level = 0; level < kDim; ++level) {
        const VirtualLabel v = encode(level);
        EXPECT_EQ(v.level, level);
        EXPECT_EQ(4 * v.bit(VirtualSpin::Q) + 2 * v.bit(VirtualSpin::R) + v.bit(VirtualSpin::S), level);
        EXPECT_EQ(decode(v.bits), level);
    }
    EXPECT_EQ(encode(6).bits, (std::array<int, 3>{1, 1, 0}));
    EXPECT_EQ(encode(0).bits, (std::array<int, 3>{0, 0, 0}));
    EXPECT_THROW(encode(8), InputError);
    EXPECT_THROW(decode({0, 2, 0}), InputError);
}

TEST(parse_gate, canonical_names) {
    EXPECT_EQ(parse_gate("CCNOT:QR->S").name(), "CCNOT:QR->S");
    EXPECT_EQ(parse_gate("CCNOT:RQ->S").name(), "CCNOT:QR->S");
    EXPECT_EQ(parse_gate("NOT:S").name(), "NOT:S");
    EXPECT_EQ(parse_gate("NOT:->S"), parse_gate("NOT:S"));
    EXPECT_EQ(parse_gate("  CNOT:Q->R ").name(), "CNOT:Q->R");
    const GateSpec ut = parse_gate("CUT:R->Q(1.2,0.4)");
    EXPECT_EQ(ut.kind, GateKind::CUT);
    EXPECT_EQ(ut.angle, 1.2);
    EXPECT_EQ(ut.phase, 0.4);
    EXPECT_EQ(parse_gate(ut.name()), ut);
}

TEST(parse_gate, rejects_malformed) {
    for (const char* bad : {"", "CCNOT:QQ->S", "CCNOT:Q->S", "CNOT:S->S", "NOT:X", "FOO:Q->S",
                            "CNOT:Q-R", "UT:S(1.0)", "UT:S(a,b)", "CNOT:QR->S", "NOT:S(1,2)"}) {
        EXPECT_THROW(parse_gate(bad), InputError) << bad;
    }
}

TEST(parse_gate, error_names_the_grammar) {
    try {
        parse_gate("CCNOT:QQ->S");
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("->"), std::string::npos);
    }
}

TEST(active_pairs, follow_bit_encoding) {
    using P = std::vector<std::pair<int, int>>;
    EXPECT_EQ(active_pairs(parse_gate("CCNOT:QR->S")), (P{{6, 7}}));
    EXPECT_EQ(active_pairs(parse_gate("CCNOT:QS->R")), (P{{5, 7}}));
    EXPECT_EQ(active_pairs(parse_gate("CCNOT:RS->Q")), (P{{3, 7}}));
    EXPECT_EQ(active_pairs(parse_gate("CNOT:Q->S")), (P{{4, 5}, {6, 7}}));
    EXPECT_EQ(active_pairs(parse_gate("NOT:Q")), (P{{0, 4}, {1, 5}, {2, 6}, {3, 7}}));
}

TEST(target_gate, toffoli_on_qr_s_swaps_six_seven) {
    const Mat8 g = target_gate(parse_gate("CCNOT:QR->S"));
    Mat8 expected = Mat8::Identity();
    expected(6, 6) = expected(7, 7) = 0.0;
    expected(6, 7) = expected(7, 6) = 1.0;
    EXPECT_EQ(g, expected);
}

TEST(target_gate, not_family_matches_bit_flip_oracle) {
    const auto gates = not_family_gates();
    ASSERT_EQ(gates.size(), 12u);
    std::set<std::string> names;
    for (const auto& g : gates) {
        names.insert(g.name());
        const Mat8 t = target_gate(g);
        EXPECT_EQ(t, permutation_oracle(bit_mask(g.target), g.control_mask())) << g.name();
        EXPECT_TRUE(is_involution(t)) << g.name();
        EXPECT_EQ(static_cast<int>(active_pairs(g).size()), 4 >> control_count(g.kind));
    }
    EXPECT_EQ(names.size(), 12u);
}

TEST(target_gate, ut_block) {
    const GateSpec g = parse_gate("CCUT:QR->S(1.2,0.4)");
    const Mat8 t = target_gate(g);
    const cplx i{0.0, 1.0};
    EXPECT_NEAR(std::abs(t(6, 6) - std::cos(0.6)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(t(6, 7) - i * std::polar(1.0, 0.4) * std::sin(0.6)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(t(7, 6) - i * std::polar(1.0, -0.4) * std::sin(0.6)), 0.0, 1e-15);
    EXPECT_LT(unitarity_defect(t), 1e-14);
    EXPECT_FALSE(is_involution(t));
    for (int k = 0; k < 6; ++k) EXPECT_EQ(t(k, k), cplx(1.0, 0.0));
}

TEST(gate_spec, validation) {
    GateSpec g{GateKind::CNOT, VirtualSpin::S, {VirtualSpin::S}};
    EXPECT_THROW(g.validate(), InputError);
    g.controls = {};
    EXPECT_THROW(g.validate(), InputError);
    g.controls = {VirtualSpin::Q};
    EXPECT_NO_THROW(g.validate());
    GateSpec u{GateKind::UT, VirtualSpin::R, {}, INFINITY, 0.0};
    EXPECT_THROW(u.validate(), InputError);
}
