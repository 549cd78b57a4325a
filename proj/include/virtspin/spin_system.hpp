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
#include <string_view>
#include <vector>

#include "virtspin/linalg.hpp"

namespace virtspin {

/// Angular momentum matrices for I = 7/2 in the I_z eigenbasis.
///
/// Row/column index M = 0..7 corresponds to m = M - 7/2, so I_z is
/// diag(-7/2, ..., +7/2). Units of hbar = 1.
struct SpinOperators {
    Mat8 ix;
    Mat8 iy;
    Mat8 iz;
    Mat8 iplus;
    Mat8 iminus;
};

/// Magnetic quantum number of level M.
constexpr double m_of_level(int level) { return level - kSpin; }

const SpinOperators& spin_operators();
SpinOperators make_spin_operators();

/// Form of the rank-2 orientation coefficient q_{+-2}.
enum class Q2Form {
    /// (1/2) sin(2 theta) exp(+-2i phi)
    AsPrinted,
    /// (1/2) sin^2(theta) exp(+-2i phi), the textbook quadrupole coefficient.
    SinSquared,
};

/// Static parameters of the spin in a Zeeman field plus an axially
/// symmetric electric field gradient. Frequencies are angular and usually
/// expressed in units of omega0.
struct SpinSystem {
    double omega0 = 1.0;
    double omegaQ = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    Q2Form q2Form = Q2Form::AsPrinted;

    /// Throws InputError unless omega0 > 0, omegaQ >= 0, 0 <= theta <= pi.
    void validate() const;
};

/// Orientation coefficients q_alpha for alpha = -2..2, stored at index alpha + 2.
std::array<cplx, 5> orientation_coefficients(const SpinSystem& sys);

/// H = -omega0 I_z + omegaQ * sum_alpha Q_alpha q_{-alpha}.
Mat8 build_hamiltonian(const SpinSystem& sys);

/// Quadrupole part alone.
Mat8 build_quadrupole(const SpinSystem& sys);

enum class SpectrumMethod { PerturbativeFirstOrder, Exact };

std::string_view to_string(SpectrumMethod method);

/// Eight levels labeled M = 0..7, with eigenvectors stored as the columns of
/// `states` in the I_z basis.
struct Spectrum {
    RealVec8 energies = RealVec8::Zero();
    Mat8 states = Mat8::Identity();
    SpectrumMethod method = SpectrumMethod::Exact;
    /// Set when omegaQ / omega0 >= 0.1 for the perturbative route.
    bool outsidePerturbativeRegime = false;

    Vec8 state(int level) const { return states.col(level); }
};

/// Ratio above which first-order theory is flagged.
inline constexpr double kPerturbativeLimit = 0.1;

/// First-order energies and Loewdin-orthonormalized first-order states.
Spectrum perturbative_spectrum(const SpinSystem& sys);

/// Dense eigendecomposition relabeled by maximal overlap with the
/// perturbative states. Throws AmbiguousLabelingError if a perturbative
/// state has no exact partner with at least twice the overlap of the
/// runner-up, or if two labels claim the same eigenvector.
Spectrum exact_spectrum(const SpinSystem& sys);

/// Exact eigenpairs labelled by following each level from omegaQ = 0 to
/// sys.omegaQ in `steps` equal increments, matching every step against the
/// previous one. Works where first-order states are too poor a reference,
/// e.g. omegaQ ~ omega0. Throws AmbiguousLabelingError if a step is too
/// coarse to tell two eigenvectors apart.
Spectrum continued_spectrum(const SpinSystem& sys, int steps = 400);

Spectrum compute_spectrum(const SpinSystem& sys, SpectrumMethod method);

struct Transition {
    int upper = 0;   // smaller label
    int lower = 0;   // larger label
    double omega = 0.0;
    double ixElement = 0.0;
    bool allowed = false;
};

/// All 28 label pairs (a < b), with |E_a - E_b| and |<psi_b|I_x|psi_a>|.
/// The seven neighbouring pairs (|a - b| = 1) are flagged allowed.
std::vector<Transition> transition_table(const Spectrum& spectrum);

/// <psi_bra | op | psi_ket> in the spectrum's eigenbasis.
cplx matrix_element(const Spectrum& spectrum, const Mat8& op, int bra, int ket);

}  // namespace virtspin
