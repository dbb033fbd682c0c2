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

#include "rismiso/marcum.hpp"

#include <cmath>
#include <limits>

#include "rismiso/error.hpp"

namespace rismiso {

namespace {

constexpr double kRescaleAbove = 1e250;

// Number of orders past which e^{-x} I_k(x) is below ~1e-18 of e^{-x} I_0(x).
int bessel_order_cutoff(double x) { return 30 + static_cast<int>(std::ceil(9.2 * std::sqrt(x))); }

// Leading two terms of the ascending series; exact to O(x^4) relative.
std::vector<double> small_argument_sequence(double x, int k_max) {
    std::vector<double> out(k_max + 1, 0.0);
    const double half = 0.5 * x;
    const double damp = std::exp(-x);
    double power_over_factorial = 1.0;
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) power_over_factorial *= half / k;
        out[k] = damp * power_over_factorial * (1.0 + half * half / (k + 1));
        if (out[k] == 0.0) break;
    }
    return out;
}

}  // namespace

std::vector<double> scaled_bessel_i_sequence(double x, int k_max) {
    if (x < 0.0 || !std::isfinite(x)) throw InvalidParameter("scaled_bessel_i_sequence: x must be finite, >= 0");
    if (k_max < 0) k_max = 0;
    if (x == 0.0) {
        std::vector<double> out(k_max + 1, 0.0);
        out[0] = 1.0;
        return out;
    }
    if (x < 1e-10) return small_argument_sequence(x, k_max);

    // Miller's backward recurrence I_{k-1} = (2k/x) I_k + I_{k+1}, normalized
    // with e^x = I_0 + 2 sum_{k>=1} I_k.
    const int start = std::max(k_max, bessel_order_cutoff(x)) + 16;
    std::vector<double> values(start + 2, 0.0);
    values[start + 1] = 0.0;
    values[start] = 1e-280;
    double sum = 0.0;
    for (int k = start; k >= 1; --k) {
        values[k - 1] = (2.0 * k / x) * values[k] + values[k + 1];
        sum += 2.0 * values[k];
        if (values[k - 1] > kRescaleAbove) {
            for (int j = k - 1; j <= start; ++j) values[j] /= kRescaleAbove;
            sum /= kRescaleAbove;
        }
    }
    sum += values[0];

    std::vector<double> out(values.begin(), values.begin() + k_max + 1);
    for (double& v : out) v /= sum;
    return out;
}

MarcumPair marcum_q1_pair(double a, double b) {
    if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw InvalidParameter("marcum_q1: arguments must be finite and nonnegative");

    if (b == 0.0) return {1.0, 0.0};
    if (a == 0.0) {
        const double q = std::exp(-0.5 * b * b);
        return {q, -std::expm1(-0.5 * b * b)};
    }

    const double gap = a - b;
    const double envelope = std::exp(-0.5 * gap * gap);
    if (envelope == 0.0) return b > a ? MarcumPair{0.0, 1.0} : MarcumPair{1.0, 0.0};

    // Q = env * sum_{k>=0} (a/b)^k Ie_k(ab)     (summed when b > a)
    // P = env * sum_{k>=1} (b/a)^k Ie_k(ab)     (summed when b <= a)
    const double x = a * b;
    const bool tail = b > a;
    const double ratio = tail ? a / b : b / a;
    const std::vector<double> bessel = scaled_bessel_i_sequence(x, bessel_order_cutoff(x));

    double sum = 0.0;
    double power = tail ? 1.0 : ratio;
    for (std::size_t k = tail ? 0 : 1; k < bessel.size(); ++k) {
        const double term = power * bessel[k];
        sum += term;
        if (term < std::numeric_limits<double>::epsilon() * 1e-3 * sum) break;
        power *= ratio;
    }
    const double direct = std::min(1.0, envelope * sum);
    return tail ? MarcumPair{direct, 1.0 - direct} : MarcumPair{1.0 - direct, direct};
}

double marcum_q1(double a, double b) { return marcum_q1_pair(a, b).q; }

}  // namespace rismiso
