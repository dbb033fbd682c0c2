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

#include "rismiso/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace rismiso {

namespace {

// Kronrod abscissae (positive half; xgk[1], xgk[3], xgk[5], xgk[7] are the
// Gauss nodes) and weights, as tabulated in QUADPACK's qk15.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo;
    double hi;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

}  // namespace

QuadratureResult gauss_kronrod_15(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * pair;
        if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    return {kronrod, std::abs(kronrod - gauss), 1, true};
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    double rel_tol, int max_subdivisions,
                                    std::span<const double> breakpoints, double abs_tol) {
    std::vector<double> edges{lo};
    for (double bp : breakpoints)
        if (bp > lo && bp < hi) edges.push_back(bp);
    edges.push_back(hi);
    std::sort(edges.begin(), edges.end());

    std::priority_queue<Segment> queue;
    double total = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (edges[i + 1] <= edges[i]) continue;
        const QuadratureResult r = gauss_kronrod_15(f, edges[i], edges[i + 1]);
        queue.push({edges[i], edges[i + 1], r.value, r.abs_error});
        total += r.value;
        error += r.abs_error;
    }

    int subdivisions = static_cast<int>(queue.size());
    auto done = [&] { return error <= std::max(abs_tol, rel_tol * std::abs(total)); };
    while (!done() && subdivisions < max_subdivisions && !queue.empty()) {
        const Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            // Interval cannot be split further in floating point.
            queue.push({worst.lo, worst.hi, worst.value, 0.0});
            error -= worst.error;
            continue;
        }
        const QuadratureResult left = gauss_kronrod_15(f, worst.lo, mid);
        const QuadratureResult right = gauss_kronrod_15(f, mid, worst.hi);
        queue.push({worst.lo, mid, left.value, left.abs_error});
        queue.push({mid, worst.hi, right.value, right.abs_error});
        total += left.value + right.value - worst.value;
        error += left.abs_error + right.abs_error - worst.error;
        ++subdivisions;
    }

    // Re-sum to shed the drift of the running updates.
    total = 0.0;
    error = 0.0;
    while (!queue.empty()) {
        total += queue.top().value;
        error += queue.top().error;
        queue.pop();
    }
    return {total, error, subdivisions, error <= std::max(abs_tol, rel_tol * std::abs(total))};
}

}  // namespace rismiso
