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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "virtspin/compiler.hpp"
#include "virtspin/dynamics.hpp"
#include "virtspin/error.hpp"
#include "virtspin/gates.hpp"
#include "virtspin/pulse.hpp"
#include "virtspin/schedule_io.hpp"
#include "virtspin/spin_system.hpp"

namespace py = pybind11;
using namespace virtspin;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Three-qubit gates as RF pulses on a single spin-7/2";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::enum_<Q2Form>(m, "Q2Form")
        .value("AsPrinted", Q2Form::AsPrinted)
        .value("SinSquared", Q2Form::SinSquared);

    py::class_<SpinSystem>(m, "SpinSystem")
        .def(py::init([](double omega0, double omegaQ, double theta, double phi, Q2Form form) {
                 SpinSystem sys{omega0, omegaQ, theta, phi, form};
                 sys.validate();
                 return sys;
             }),
             py::arg("omega0") = 1.0, py::arg("omegaQ") = 0.0, py::arg("theta") = 0.0,
             py::arg("phi") = 0.0, py::arg("q2_form") = Q2Form::AsPrinted)
        .def_readwrite("omega0", &SpinSystem::omega0)
        .def_readwrite("omegaQ", &SpinSystem::omegaQ)
        .def_readwrite("theta", &SpinSystem::theta)
        .def_readwrite("phi", &SpinSystem::phi)
        .def_readwrite("q2_form", &SpinSystem::q2Form);

    py::class_<SpinOperators>(m, "SpinOperators")
        .def_readonly("ix", &SpinOperators::ix)
        .def_readonly("iy", &SpinOperators::iy)
        .def_readonly("iz", &SpinOperators::iz)
        .def_readonly("iplus", &SpinOperators::iplus)
        .def_readonly("iminus", &SpinOperators::iminus);
    m.def("make_spin_operators", &make_spin_operators);
    m.def("build_hamiltonian", &build_hamiltonian, py::arg("system"));

    py::enum_<SpectrumMethod>(m, "SpectrumMethod")
        .value("PerturbativeFirstOrder", SpectrumMethod::PerturbativeFirstOrder)
        .value("Exact", SpectrumMethod::Exact);

    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("energies", &Spectrum::energies)
        .def_readonly("states", &Spectrum::states)
        .def_readonly("method", &Spectrum::method)
        .def_readonly("outside_perturbative_regime", &Spectrum::outsidePerturbativeRegime);
    m.def("perturbative_spectrum", &perturbative_spectrum, py::arg("system"));
    m.def("exact_spectrum", &exact_spectrum, py::arg("system"));
    m.def("continued_spectrum", &continued_spectrum, py::arg("system"), py::arg("steps") = 400);

    py::class_<Transition>(m, "Transition")
        .def_readonly("upper", &Transition::upper)
        .def_readonly("lower", &Transition::lower)
        .def_readonly("omega", &Transition::omega)
        .def_readonly("ix_element", &Transition::ixElement)
        .def_readonly("allowed", &Transition::allowed);
    m.def("transition_table", &transition_table, py::arg("spectrum"));

    py::enum_<Axis>(m, "Axis").value("X", Axis::X).value("Y", Axis::Y);
    py::class_<Tone>(m, "Tone")
        .def(py::init([](int upper, int lower, double angle, double phase, Axis axis) {
                 Tone t{upper, lower, angle, phase, axis};
                 t.validate();
                 return t;
             }),
             py::arg("upper"), py::arg("lower"), py::arg("angle") = kPi, py::arg("phase") = 0.0,
             py::arg("axis") = Axis::X)
        .def_readwrite("upper", &Tone::upper)
        .def_readwrite("lower", &Tone::lower)
        .def_readwrite("angle", &Tone::angle)
        .def_readwrite("phase", &Tone::phase)
        .def_readwrite("axis", &Tone::axis);
    m.def("projector", [](int a, int b) { return projector(a, b).matrix; });
    m.def("pulse_propagator", &pulse_propagator, py::arg("tone"));
    m.def("multi_tone_propagator",
          [](const std::vector<Tone>& tones) { return multi_tone_propagator(tones); });
    m.def(
        "pulse_duration",
        [](double angle, double gammaHrf, double element) {
            return pulse_duration(angle, PulseParams{gammaHrf, 0.0}, element);
        },
        py::arg("angle"), py::arg("gammaHrf"), py::arg("ix_element"));

    py::class_<GateSpec>(m, "GateSpec")
        .def_property_readonly("name", &GateSpec::name)
        .def_readonly("angle", &GateSpec::angle)
        .def_readonly("phase", &GateSpec::phase);
    m.def("parse_gate", &parse_gate, py::arg("text"));
    m.def("target_gate", [](const std::string& g) { return target_gate(parse_gate(g)); });
    m.def("not_family_gates", [] {
        std::vector<std::string> names;
        for (const auto& g : not_family_gates()) names.push_back(g.name());
        return names;
    });

    py::class_<PulseSchedule>(m, "PulseSchedule")
        .def_property_readonly("tone_count", &PulseSchedule::tone_count)
        .def("pairs",
             [](const PulseSchedule& s) {
                 std::vector<std::vector<std::pair<int, int>>> out;
                 for (const auto& g : s.groups) {
                     auto& row = out.emplace_back();
                     for (const auto& t : g.tones) row.emplace_back(t.tone.upper, t.tone.lower);
                 }
                 return out;
             })
        .def("propagator", [](const PulseSchedule& s) { return schedule_propagator(s); })
        .def("to_text", &serialize_schedule);
    m.def("compile", [](const std::string& g) { return compile(parse_gate(g)); });
    m.def(
        "compile_resolved",
        [](const std::string& g, const SpinSystem& sys, bool exact, double gammaHrf) {
            const Spectrum s = exact ? exact_spectrum(sys) : perturbative_spectrum(sys);
            return resolve(compile(parse_gate(g)), s, sys, gammaHrf);
        },
        py::arg("gate"), py::arg("system"), py::arg("exact") = true, py::arg("gammaHrf") = 1e-3);
    m.def("parse_schedule", [](const std::string& text) { return parse_schedule(text); });

    py::class_<EquivalenceReport>(m, "EquivalenceReport")
        .def_property_readonly("verdict",
                               [](const EquivalenceReport& r) {
                                   return std::string(to_string(r.verdict));
                               })
        .def_readonly("max_deviation", &EquivalenceReport::maxDeviation)
        .def_property_readonly("accepted", &EquivalenceReport::accepted);
    m.def(
        "verify",
        [](const std::string& g, const Mat8& u) { return verify(parse_gate(g), u); },
        py::arg("gate"), py::arg("propagator"));
    m.def("truth_table", [](const std::string& g) {
        std::vector<std::tuple<int, int, cplx>> rows;
        for (const auto& r : truth_table(parse_gate(g))) rows.emplace_back(r.input, r.output, r.phase);
        return rows;
    });

    m.def(
        "rwa_deviation",
        [](const SpinSystem& sys, const Tone& tone, double gammaHrf, int steps) {
            IntegrationConfig cfg;
            cfg.stepsPerShortestPeriod = steps;
            return rwa_deviation(sys, tone, PulseParams{gammaHrf, 0.0}, cfg);
        },
        py::arg("system"), py::arg("tone"), py::arg("gammaHrf"),
        py::arg("steps_per_period") = IntegrationConfig{}.stepsPerShortestPeriod,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "forbidden_scaling",
        [](const SpinSystem& sys, int upper, int lower, double lo, double hi, int points) {
            return forbidden_scaling(sys, upper, lower, lo, hi, points);
        },
        py::arg("system"), py::arg("upper"), py::arg("lower"), py::arg("lo") = 1e-4,
        py::arg("hi") = 1e-2, py::arg("points") = 20, py::call_guard<py::gil_scoped_release>());
}
