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

#include "virtspin/linalg.hpp"

namespace virtspin {

Mat8 expm_hermitian(const Mat8& h, double t) {
    Eigen::SelfAdjointEigenSolver<Mat8> solver(h);
    const auto& vecs = solver.eigenvectors();
    Vec8 phases;
    for (int k = 0; k < kDim; ++k) {
        phases(k) = std::polar(1.0, -solver.eigenvalues()(k) * t);
    }
    return vecs * phases.asDiagonal() * vecs.adjoint();
}

}  // namespace virtspin
