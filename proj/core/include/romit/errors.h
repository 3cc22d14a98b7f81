// Copyright 2026 The romit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ROMIT_ERRORS_H
#define ROMIT_ERRORS_H

#include <stdexcept>
#include <string>

namespace romit {

/// Raised when caller-supplied input breaks a documented precondition.
/// The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a computation cannot produce a trustworthy result
/// (singular matrices, divergent inverses, degenerate statistics).
/// The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class SingularMatrixError : public NumericalError {
   public:
    SingularMatrixError(const std::string &what, double condition_estimate)
        : NumericalError(what), condition_estimate(condition_estimate) {
    }
    double condition_estimate;
};

class SupportExplosionError : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

class NonInvertibleChannelError : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

class DegenerateDistributionError : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

}  // namespace romit

#endif
