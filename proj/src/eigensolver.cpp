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

#include "rismiso/eigensolver.hpp"

#include <cmath>
#include <numbers>

#include "rismiso/error.hpp"

namespace rismiso {

namespace {

// Products between successive squarings of the iteration operator.
constexpr int kSquaringPeriod = 4;
// Beyond this many squarings the operator is numerically a projector.
constexpr int kMaxSquarings = 40;

// Fixed, generic start vector; never orthogonal to a top eigenvector except
// on a measure-zero set.
CVector start_vector(Eigen::Index n) {
    CVector v(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double phase = std::numbers::phi * static_cast<double>(k + 1);
        v[k] = std::polar(1.0 + 0.1 * static_cast<double>(k % 7), phase);
    }
    return v.normalized();
}

}  // namespace

void normalize_phase(CVector& v) {
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        const double modulus = std::abs(v[k]);
        if (modulus > 1e-9) {
            v *= std::conj(v[k]) / modulus;
            v[k] = modulus;
            return;
        }
    }
}

Eigenpair principal_eigenpair(const CMatrix& Z, const PowerIterationOptions& options) {
    if (Z.rows() != Z.cols()) throw DimensionMismatch("principal_eigenpair: matrix is not square");
    const double scale = Z.norm();
    if (!(scale > 0.0)) throw DegenerateMatrix("principal_eigenpair: matrix is identically zero");

    CMatrix B = Z / scale;
    int squarings = 0;
    CVector v = start_vector(Z.rows());

    Eigenpair result;
    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        CVector next = B * v;
        double norm = next.norm();
        if (!(norm > 0.0)) {
            // The start vector fell into the null space of B; reseed.
            next = Z * CVector::Ones(Z.rows()) + Z.col(0);
            norm = next.norm();
            if (!(norm > 0.0)) throw DegenerateMatrix("principal_eigenpair: no nonzero direction");
        }
        v = next / norm;

        const CVector Zv = Z * v;
        const double lambda = v.dot(Zv).real();
        const double residual = (Zv - lambda * v).norm();
        result.iterations = iter;
        result.residual = residual;
        result.value = lambda;
        if (lambda > 0.0 && residual <= options.tolerance * lambda) break;

        if (iter == options.max_iterations) {
            throw ConvergenceError("principal_eigenpair: no convergence, residual " +
                                       std::to_string(residual),
                                   residual, iter);
        }
        if (iter % kSquaringPeriod == 0 && squarings < kMaxSquarings) {
            CMatrix B2 = B * B;
            B2 = 0.5 * (B2 + B2.adjoint()).eval();
            const double trace = B2.trace().real();
            if (trace > 0.0) {
                B = B2 / trace;
                ++squarings;
            }
        }
    }

    normalize_phase(v);
    result.vector = v;

    // Tie check: the top eigenvalue of the deflated matrix.
    if (Z.rows() > 1) {
        const CMatrix deflated = Z - result.value * v * v.adjoint();
        CVector w = start_vector(Z.rows());
        w -= v * v.dot(w);
        double second = 0.0;
        if (w.norm() > 0.0) {
            w.normalize();
            for (int k = 0; k < 200; ++k) {
                CVector next = deflated * w;
                next -= v * v.dot(next);
                const double n = next.norm();
                if (!(n > 0.0)) break;
                w = next / n;
                second = w.dot(deflated * w).real();
            }
        }
        result.degenerate = second >= result.value * (1.0 - 1e-9);
    }
    return result;
}

CVector principal_eigenvector(const CMatrix& Z, double tol, int max_iters) {
    return principal_eigenpair(Z, {tol, max_iters}).vector;
}

}  // namespace rismiso
