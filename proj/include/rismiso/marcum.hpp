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

#include <vector>

namespace rismiso {

/// e^{-x} I_k(x) for k = 0..k_max, x >= 0.
std::vector<double> scaled_bessel_i_sequence(double x, int k_max);

/// Q_1(a, b) together with its complement 1 - Q_1(a, b). Whichever of the
/// two is smaller is summed directly, so both carry full relative accuracy
/// down to the underflow threshold.
struct MarcumPair {
    double q = 1.0;
    double p = 0.0;
};

MarcumPair marcum_q1_pair(double a, double b);

/// First-order Marcum Q function: the tail P[X > b] of a unit-scale Rice
/// variable with noncentrality a. Throws InvalidParameter for negative or
/// non-finite inputs.
double marcum_q1(double a, double b);

}  // namespace rismiso
