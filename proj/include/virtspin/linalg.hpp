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

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace virtspin {

using cplx = std::complex<double>;

/// Number of levels of a spin-7/2: 2I + 1.
inline constexpr int kDim = 8;

/// Spin quantum number I.
inline constexpr double kSpin = 3.5;

inline constexpr double kPi = std::numbers::pi;

using Mat8 = Eigen::Matrix<cplx, kDim, kDim>;
using Vec8 = Eigen::Matrix<cplx, kDim, 1>;
using RealVec8 = Eigen::Matrix<double, kDim, 1>;

inline Mat8 identity8() { return Mat8::Identity(); }

/// Largest entrywise modulus of a matrix.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.cwiseAbs().maxCoeff();
}

inline Mat8 commutator(const Mat8& a, const Mat8& b) { return a * b - b * a; }

/// ||U^dagger U - 1||_max.
inline double unitarity_defect(const Mat8& u) {
    return max_abs(u.adjoint() * u - Mat8::Identity());
}

/// exp(-i * H * t) for Hermitian H, via eigendecomposition. The result is
/// unitary to rounding regardless of t.
Mat8 expm_hermitian(const Mat8& h, double t);

}  // namespace virtspin
