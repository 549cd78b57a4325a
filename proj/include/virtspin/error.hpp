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

#include <stdexcept>
#include <string>

namespace virtspin {

/// Bad arguments: out-of-range levels, malformed gate strings, invalid
/// physical parameters.
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical trouble: ambiguous level labeling, under-resolved integration,
/// degenerate fits, forbidden transitions.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Exact eigenstates could not be matched to perturbative labels.
class AmbiguousLabelingError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// Transition matrix element is zero, so no finite pulse reaches the angle.
class ForbiddenTransitionError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// Time slicing too coarse for the drive, or the run would be too long.
class ResolutionError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// Every sample of a scaling sweep was numerically zero.
class DegenerateFitError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

}  // namespace virtspin
