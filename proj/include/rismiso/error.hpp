// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The rismiso Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace rismiso {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A scalar argument or configuration field is outside its valid domain.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// The quadratic form handed to the eigen-solver is identically zero.
class DegenerateMatrix : public Error {
public:
    using Error::Error;
};

/// The eigen-solver ran out of iterations. Carries the last residual.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual, int iterations)
        : Error(what), residual_(residual), iterations_(iterations) {}

    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_;
    int iterations_;
};

/// The beam leaves nothing to align: E f vanishes.
class DegenerateBeam : public Error {
public:
    using Error::Error;
};

/// Rice parameters cannot be formed (zero gain, or zero scatter where a spread is required).
class DegenerateStats : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature missed its tolerance. Carries the best estimate and its error bound.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, double estimate, double error_bound)
        : Error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

}  // namespace rismiso
