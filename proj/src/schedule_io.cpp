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

#include "virtspin/schedule_io.hpp"

#include <json.hpp>

#include "virtspin/error.hpp"

namespace virtspin {

namespace {

using nlohmann::json;

constexpr std::string_view kFormatTag = "virtspin-schedule/1";

json optional_real(const std::optional<double>& v, double scale) {
    return v ? json(*v * scale) : json(nullptr);
}

std::optional<double> read_optional_real(const json& node, const char* key, double scale) {
    if (!node.contains(key) || node.at(key).is_null()) return std::nullopt;
    return node.at(key).get<double>() / scale;
}

Q2Form parse_q2_form(const std::string& s) {
    if (s == "as-printed") return Q2Form::AsPrinted;
    if (s == "sin-squared") return Q2Form::SinSquared;
    throw InputError("unknown q2_form '" + s + "'");
}

SpectrumMethod parse_method(const std::string& s) {
    if (s == "exact") return SpectrumMethod::Exact;
    if (s == "perturbative-first-order") return SpectrumMethod::PerturbativeFirstOrder;
    throw InputError("unknown spectrum_method '" + s + "'");
}

}  // namespace

std::string_view to_string(Q2Form form) {
    return form == Q2Form::AsPrinted ? "as-printed" : "sin-squared";
}

std::string serialize_schedule(const PulseSchedule& schedule) {
    const double omega0 = schedule.resolution ? schedule.resolution->system.omega0 : 1.0;

    json doc;
    doc["format"] = kFormatTag;
    if (schedule.gates.size() == 1) {
        doc["gate"] = schedule.gates.front().name();
    } else {
        json names = json::array();
        for (const auto& g : schedule.gates) names.push_back(g.name());
        doc["gate"] = names;
    }
    if (schedule.resolution) {
        const auto& r = *schedule.resolution;
        doc["spectrum_method"] = std::string(to_string(r.method));
        doc["parameters"] = {
            {"omega0", r.system.omega0},   {"omegaQ", r.system.omegaQ},
            {"theta", r.system.theta},     {"phi", r.system.phi},
            {"q2_form", std::string(to_string(r.system.q2Form))},
            {"gammaHrf", r.gammaHrf},
        };
    } else {
        doc["spectrum_method"] = nullptr;
        doc["parameters"] = nullptr;
    }

    json groups = json::array();
    for (const auto& group : schedule.groups) {
        json tones = json::array();
        for (const auto& st : group.tones) {
            tones.push_back({
                {"upper", st.tone.upper},
                {"lower", st.tone.lower},
                {"angle_rad", st.tone.angle},
                {"phase_rad", st.tone.phase},
                {"axis", std::string(to_string(st.tone.axis))},
                {"omega", optional_real(st.omega, 1.0 / omega0)},
                {"duration", optional_real(st.duration, omega0)},
            });
        }
        groups.push_back(tones);
    }
    doc["groups"] = groups;
    return doc.dump(2) + "\n";
}

PulseSchedule parse_schedule(std::string_view text) {
    try {
        const json doc = json::parse(text);
        if (doc.value("format", std::string{}) != kFormatTag) {
            throw InputError("not a virtspin schedule (missing format tag)");
        }
        PulseSchedule schedule;
        const json& gate = doc.at("gate");
        if (gate.is_array()) {
            for (const auto& g : gate) schedule.gates.push_back(parse_gate(g.get<std::string>()));
        } else {
            schedule.gates.push_back(parse_gate(gate.get<std::string>()));
        }

        double omega0 = 1.0;
        if (doc.contains("parameters") && !doc.at("parameters").is_null()) {
            const json& p = doc.at("parameters");
            ScheduleResolution r;
            r.method = parse_method(doc.at("spectrum_method").get<std::string>());
            r.system.omega0 = p.at("omega0").get<double>();
            r.system.omegaQ = p.at("omegaQ").get<double>();
            r.system.theta = p.at("theta").get<double>();
            r.system.phi = p.at("phi").get<double>();
            r.system.q2Form = parse_q2_form(p.value("q2_form", std::string("as-printed")));
            r.gammaHrf = p.at("gammaHrf").get<double>();
            r.system.validate();
            omega0 = r.system.omega0;
            schedule.resolution = r;
        }

        for (const auto& g : doc.at("groups")) {
            PulseGroup group;
            for (const auto& t : g) {
                ScheduledTone st;
                st.tone.upper = t.at("upper").get<int>();
                st.tone.lower = t.at("lower").get<int>();
                st.tone.angle = t.at("angle_rad").get<double>();
                st.tone.phase = t.at("phase_rad").get<double>();
                st.tone.axis = parse_axis(t.at("axis").get<std::string>());
                st.tone.validate();
                st.omega = read_optional_real(t, "omega", 1.0 / omega0);
                st.duration = read_optional_real(t, "duration", omega0);
                group.tones.push_back(st);
            }
            schedule.groups.push_back(std::move(group));
        }
        return schedule;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed schedule: ") + e.what());
    }
}

}  // namespace virtspin
