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

#include "rismiso/linalg.hpp"

namespace rismiso {

struct PowerIterationOptions {
    double tolerance = 1e-12;  ///< stop when ||Z v - lambda v|| <= tolerance * lambda
    int max_iterations = 10000;
};

struct Eigenpair {
    CVector vector;  ///< unit norm, phase-normalized
    double value = 0.0;  ///< Rayleigh quotient v^H Z v
    double residual = 0.0;  ///< ||Z v - lambda v||
    int iterations = 0;
    bool degenerate = false;  ///< top eigenvalue is (numerically) repeated
};

/// Principal eigenpair of a Hermitian positive semidefinite matrix by power
/// iteration.
///
/// The iteration operator is squared every few steps (B <- B^2 / tr(B^2)),
/// so the effective exponent grows geometrically and near-degenerate
/// spectra still converge in a few dozen products. Convergence is always
/// judged on the residual of the original matrix.
///
/// Throws DegenerateMatrix if Z is zero, ConvergenceError if the residual
/// target is not met within max_iterations.
Eigenpair principal_eigenpair(const CMatrix& Z, const PowerIterationOptions& options = {});

/// Convenience wrapper returning only the eigenvector.
CVector principal_eigenvector(const CMatrix& Z, double tol = 1e-12, int max_iters = 10000);

/// Rotates v so that its first entry with modulus > 1e-9 is real and positive.
void normalize_phase(CVector& v);

}  // namespace rismiso
