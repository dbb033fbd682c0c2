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

#include <functional>
#include <span>

namespace rismiso {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    int subdivisions = 0;
    bool converged = false;
};

/// 15-point Kronrod rule on [lo, hi] with the embedded 7-point Gauss rule as
/// error estimate.
QuadratureResult gauss_kronrod_15(const std::function<double(double)>& f, double lo, double hi);

/// Globally adaptive Gauss-Kronrod quadrature: the interval with the largest
/// error estimate is bisected until the summed error is below
/// rel_tol * |value| (or abs_tol), or max_subdivisions is reached. Interior
/// breakpoints, if given, seed the initial partition. Never throws; callers
/// decide what to do with converged == false.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    double rel_tol, int max_subdivisions,
                                    std::span<const double> breakpoints = {}, double abs_tol = 0.0);

}  // namespace rismiso
