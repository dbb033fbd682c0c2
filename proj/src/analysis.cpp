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

#include "rismiso/analysis.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "rismiso/error.hpp"
#include "rismiso/marcum.hpp"
#include "rismiso/quadrature.hpp"

namespace rismiso {

double RiceGainStats::scale() const { return sigma / std::numbers::sqrt2; }

void QuadratureSpec::validate() const {
    if (!(relative_tolerance > 0.0 && relative_tolerance < 1.0))
        throw InvalidParameter("relative_tolerance must lie in (0, 1)");
    if (!(truncation_cutoff > 0.0)) throw InvalidParameter("truncation_cutoff must be positive");
    if (max_subdivisions < 1) throw InvalidParameter("max_subdivisions must be at least 1");
}

RiceGainStats rice_gain_stats(const BeamformerSolution& solution, const SystemConfig& config,
                              const LosComponents& los) {
    if (solution.f.size() != los.E.cols() || solution.psi.size() != los.E.rows())
        throw DimensionMismatch("rice_gain_stats: solution does not match the geometry");
    const auto [kl, kn] = rician_coefficients(config.K);
    const double N = los.N();
    const double mu = config.mu;

    const cdouble e0f = (los.cascade_row() * solution.f)(0);
    const cdouble gf = los.g_bar.cwiseProduct(solution.f).sum();
    const double abs_e0f = std::abs(e0f);
    const double abs_gf = std::abs(gf);
    if (abs_e0f <= 1e-12 && abs_gf <= 1e-12)
        throw DegenerateStats("rice_gain_stats: both the cascade and the direct beam gain vanish");

    RiceGainStats stats;
    stats.nu = N * kl * kl * abs_e0f + mu * kl * abs_gf;
    stats.sigma = std::sqrt(N * kn * kn * (1.0 + kl * kl * abs_e0f * abs_e0f) + mu * mu * kn * kn);

    const CVector Ef = los.E * solution.f;
    const cdouble aligned = solution.psi.cwiseProduct(Ef).sum();
    stats.mean_phase = std::arg(kl * kl * aligned + mu * kl * gf);
    return stats;
}

double rice_cdf(double x, double nu, double scale) {
    if (!(scale > 0.0)) throw DegenerateStats("rice_cdf: scale must be positive");
    if (x <= 0.0) return 0.0;
    return marcum_q1_pair(nu / scale, x / scale).p;
}

double outage_analytical(double beta, const RiceGainStats& stats, double gamma) {
    if (!(stats.sigma > 0.0)) throw DegenerateStats("outage_analytical: sigma must be positive");
    if (!(gamma > 0.0)) throw InvalidParameter("outage_analytical: gamma must be positive");
    if (std::isnan(beta) || beta < 0.0) throw InvalidParameter("outage_analytical: beta must be >= 0");
    if (std::isinf(beta)) return 1.0;
    return rice_cdf(std::sqrt(beta / gamma), stats.nu, stats.scale());
}

double ergodic_capacity_analytical(const RiceGainStats& stats, double gamma,
                                   const QuadratureSpec& quad) {
    quad.validate();
    if (!(stats.sigma > 0.0))
        throw DegenerateStats("ergodic_capacity_analytical: sigma must be positive");
    if (!(gamma > 0.0)) throw InvalidParameter("ergodic_capacity_analytical: gamma must be positive");

    const double s = stats.scale();
    const double a = stats.nu / s;
    const double gs2 = gamma * s * s;

    // Upper limit: first unit step past a where the Marcum factor is negligible.
    double x_max = a + 1.0;
    while (marcum_q1(a, x_max) >= quad.truncation_cutoff) x_max += 1.0;

    // u = gamma s^2 x^2  =>  du / (1 + u) = 2 gamma s^2 x / (1 + gamma s^2 x^2) dx
    auto integrand = [&](double x) {
        return 2.0 * gs2 * x / (1.0 + gs2 * x * x) * marcum_q1(a, x);
    };
    const std::array<double, 3> breakpoints{a - 6.0, a, a + 6.0};
    const QuadratureResult r = integrate_adaptive(integrand, 0.0, x_max, quad.relative_tolerance,
                                                  quad.max_subdivisions, breakpoints);

    // Dropped part: Q_1(a, x) <~ Q_1(a, x_max) e^{-(x-x_max) c} with c = x_max - a, and the
    // prefactor is below both 2/x and 2 gamma s^2 x.
    const double c = x_max - a;
    const double tail = marcum_q1(a, x_max) *
                        std::min(2.0 / (x_max * c), 2.0 * gs2 * (x_max / c + 1.0 / (c * c)));
    const double error = r.abs_error + tail;
    const double value = r.value / std::numbers::ln2;
    if (!r.converged || error > quad.relative_tolerance * std::abs(r.value)) {
        throw IntegrationError("ergodic_capacity_analytical: quadrature missed its tolerance",
                               value, error / std::numbers::ln2);
    }
    return value;
}

}  // namespace rismiso
