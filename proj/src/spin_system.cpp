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

#include "virtspin/spin_system.hpp"

#include <cmath>
#include <sstream>

#include "virtspin/error.hpp"

namespace virtspin {

namespace {

constexpr cplx kI{0.0, 1.0};

// I(I+1) for I = 7/2.
constexpr double kSpinSquared = kSpin * (kSpin + 1.0);

Mat8 inverse_sqrt_hermitian(const Mat8& s) {
    Eigen::SelfAdjointEigenSolver<Mat8> solver(s);
    RealVec8 inv = solver.eigenvalues().cwiseSqrt().cwiseInverse();
    return solver.eigenvectors() * inv.cast<cplx>().asDiagonal() *
           solver.eigenvectors().adjoint();
}

}  // namespace

SpinOperators make_spin_operators() {
    SpinOperators ops;
    ops.iz.setZero();
    ops.iplus.setZero();
    for (int level = 0; level < kDim; ++level) {
        const double m = m_of_level(level);
        ops.iz(level, level) = m;
        if (level + 1 < kDim) {
            // I+ |m> = sqrt(I(I+1) - m(m+1)) |m+1>
            ops.iplus(level + 1, level) = std::sqrt(kSpinSquared - m * (m + 1.0));
        }
    }
    ops.iminus = ops.iplus.adjoint();
    ops.ix = 0.5 * (ops.iplus + ops.iminus);
    ops.iy = (ops.iplus - ops.iminus) / (2.0 * kI);
    return ops;
}

const SpinOperators& spin_operators() {
    static const SpinOperators ops = make_spin_operators();
    return ops;
}

void SpinSystem::validate() const {
    std::ostringstream msg;
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
        msg << "omega0 must be positive and finite (got " << omega0 << ")";
    } else if (!(omegaQ >= 0.0) || !std::isfinite(omegaQ)) {
        msg << "omegaQ must be non-negative and finite (got " << omegaQ << ")";
    } else if (!(theta >= 0.0 && theta <= kPi)) {
        msg << "theta must lie in [0, pi] (got " << theta << ")";
    } else if (!std::isfinite(phi)) {
        msg << "phi must be finite";
    } else {
        return;
    }
    throw InputError(msg.str());
}

std::array<cplx, 5> orientation_coefficients(const SpinSystem& sys) {
    const double c = std::cos(sys.theta);
    const double s = std::sin(sys.theta);
    const double q2mag = sys.q2Form == Q2Form::AsPrinted ? 0.5 * std::sin(2.0 * sys.theta)
                                                         : 0.5 * s * s;
    std::array<cplx, 5> q{};
    q[2] = 3.0 * c * c - 1.0;
    q[3] = s * c * std::polar(1.0, sys.phi);
    q[1] = s * c * std::polar(1.0, -sys.phi);
    q[4] = q2mag * std::polar(1.0, 2.0 * sys.phi);
    q[0] = q2mag * std::polar(1.0, -2.0 * sys.phi);
    return q;
}

Mat8 build_quadrupole(const SpinSystem& sys) {
    const auto& ops = spin_operators();
    const auto q = orientation_coefficients(sys);
    const auto coeff = [&](int alpha) { return q[static_cast<std::size_t>(alpha + 2)]; };

    const Mat8 q0 = ops.iz * ops.iz - (kSpinSquared / 3.0) * Mat8::Identity();
    const Mat8 qp1 = ops.iz * ops.iplus + ops.iplus * ops.iz;
    const Mat8 qm1 = ops.iz * ops.iminus + ops.iminus * ops.iz;
    const Mat8 qp2 = ops.iplus * ops.iplus;
    const Mat8 qm2 = ops.iminus * ops.iminus;

    Mat8 sum = q0 * coeff(0) + qp1 * coeff(-1) + qm1 * coeff(1) + qp2 * coeff(-2) +
               qm2 * coeff(2);
    return sys.omegaQ * sum;
}

Mat8 build_hamiltonian(const SpinSystem& sys) {
    return -sys.omega0 * spin_operators().iz + build_quadrupole(sys);
}

std::string_view to_string(SpectrumMethod method) {
    switch (method) {
        case SpectrumMethod::PerturbativeFirstOrder:
            return "perturbative-first-order";
        case SpectrumMethod::Exact:
            return "exact";
    }
    return "unknown";
}

Spectrum perturbative_spectrum(const SpinSystem& sys) {
    sys.validate();
    const Mat8 hq = build_quadrupole(sys);
    const double q0 = orientation_coefficients(sys)[2].real();

    Spectrum out;
    out.method = SpectrumMethod::PerturbativeFirstOrder;
    out.outsidePerturbativeRegime = sys.omegaQ / sys.omega0 >= kPerturbativeLimit;

    Mat8 raw = Mat8::Identity();
    for (int m = 0; m < kDim; ++m) {
        const double mm = m_of_level(m);
        out.energies(m) = -sys.omega0 * mm + sys.omegaQ * q0 * (mm * mm - 21.0 / 4.0);
        for (int k = 0; k < kDim; ++k) {
            if (k == m) continue;
            // E_m^(0) - E_k^(0) = omega0 (k - m)
            raw(k, m) = hq(k, m) / (sys.omega0 * static_cast<double>(k - m));
        }
    }
    // Symmetric orthonormalization: raw * (raw^dagger raw)^(-1/2).
    out.states = raw * inverse_sqrt_hermitian(raw.adjoint() * raw);
    return out;
}

namespace {

// Assigns each reference column the eigenvector it overlaps most, with the
// phase fixed so that <reference|state> is real and positive.
Spectrum label_by_overlap(const Mat8& reference, const SpinSystem& sys) {
    Eigen::SelfAdjointEigenSolver<Mat8> solver(build_hamiltonian(sys));
    const Mat8& vecs = solver.eigenvectors();

    // overlap(j, M) = |<exact_j | ref_M>|^2
    const Eigen::Matrix<double, kDim, kDim> overlap = (vecs.adjoint() * reference).cwiseAbs2();

    Spectrum out;
    out.method = SpectrumMethod::Exact;
    std::array<bool, kDim> taken{};
    for (int level = 0; level < kDim; ++level) {
        int best = 0;
        for (int j = 1; j < kDim; ++j) {
            if (overlap(j, level) > overlap(best, level)) best = j;
        }
        double runnerUp = 0.0;
        for (int j = 0; j < kDim; ++j) {
            if (j != best) runnerUp = std::max(runnerUp, overlap(j, level));
        }
        if (overlap(best, level) < 2.0 * runnerUp || taken[static_cast<std::size_t>(best)]) {
            std::ostringstream msg;
            msg << "cannot label exact eigenstate for level M=" << level
                << ": best overlap " << overlap(best, level) << ", runner-up " << runnerUp
                << " (strong level mixing at omegaQ/omega0=" << sys.omegaQ / sys.omega0 << ")";
            throw AmbiguousLabelingError(msg.str());
        }
        taken[static_cast<std::size_t>(best)] = true;

        Vec8 v = vecs.col(best);
        const cplx proj = reference.col(level).dot(v);
        v *= std::conj(proj) / std::abs(proj);
        out.states.col(level) = v;
        out.energies(level) = solver.eigenvalues()(best);
    }
    return out;
}

}  // namespace

Spectrum exact_spectrum(const SpinSystem& sys) {
    return label_by_overlap(perturbative_spectrum(sys).states, sys);
}

Spectrum continued_spectrum(const SpinSystem& sys, int steps) {
    sys.validate();
    if (steps < 1) throw InputError("continuation needs at least one step");
    Mat8 reference = Mat8::Identity();
    Spectrum out;
    for (int k = 1; k <= steps; ++k) {
        SpinSystem at = sys;
        at.omegaQ = sys.omegaQ * k / steps;
        out = label_by_overlap(reference, at);
        reference = out.states;
    }
    return out;
}

Spectrum compute_spectrum(const SpinSystem& sys, SpectrumMethod method) {
    return method == SpectrumMethod::Exact ? exact_spectrum(sys) : perturbative_spectrum(sys);
}

cplx matrix_element(const Spectrum& spectrum, const Mat8& op, int bra, int ket) {
    return spectrum.states.col(bra).dot(op * spectrum.states.col(ket));
}

std::vector<Transition> transition_table(const Spectrum& spectrum) {
    const Mat8& ix = spin_operators().ix;
    std::vector<Transition> rows;
    rows.reserve(kDim * (kDim - 1) / 2);
    for (int a = 0; a < kDim; ++a) {
        for (int b = a + 1; b < kDim; ++b) {
            Transition t;
            t.upper = a;
            t.lower = b;
            t.omega = std::abs(spectrum.energies(a) - spectrum.energies(b));
            t.ixElement = std::abs(matrix_element(spectrum, ix, b, a));
            t.allowed = (b - a) == 1;
            rows.push_back(t);
        }
    }
    return rows;
}

}  // namespace virtspin
