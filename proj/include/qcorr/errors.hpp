// Copyright 2026 The qcorr Authors
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

#ifndef QCORR_ERRORS_HPP
#define QCORR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcorr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotHermitianError : public Error {
public:
    using Error::Error;
};

/// Trace, positivity or Bloch-norm violations.
class InvalidStateError : public Error {
public:
    using Error::Error;
};

class InvalidEntropyFunctionError : public Error {
public:
    using Error::Error;
};

class InvalidDirectionError : public Error {
public:
    using Error::Error;
};

/// Conditioning on an outcome whose probability is (numerically) zero.
class ZeroProbabilityError : public Error {
public:
    using Error::Error;
};

/// canonicalize() inputs whose inter-pair Bloch angles differ.
class AngleMismatchError : public Error {
public:
    using Error::Error;
};

class NotNormalizableError : public Error {
public:
    using Error::Error;
};

class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

/// An objective handed to the brute-force optimizers returned NaN or inf.
class NonFiniteObjectiveError : public Error {
public:
    NonFiniteObjectiveError(const std::string& where, double at)
        : Error("objective is not finite at " + where + " = " + std::to_string(at)), location(at) {}
    double location;
};

}  // namespace qcorr

#endif  // QCORR_ERRORS_HPP
