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

#include <algorithm>
#include <cmath>

#include "rismiso/error.hpp"
#include "rismiso/montecarlo.hpp"
#include "rismiso/random.hpp"

namespace rismiso {

namespace {

cdouble bilinear(const CVector& x, const CVector& y) { return x.cwiseProduct(y).sum(); }

MomentCheck make_check(std::string name, double measured, double expected, double tolerance) {
    MomentCheck c;
    c.name = std::move(name);
    c.measured = measured;
    c.expected = expected;
    c.relative_error = std::abs(measured - expected) / std::abs(expected);
    c.tolerance = tolerance;
    c.passed = c.relative_error <= tolerance;
    return c;
}

// Sample variance E|x - mean|^2 of a complex sequence.
struct ComplexMoments {
    RunningMoments re;
    RunningMoments im;
    void add(cdouble z) {
        re.add(z.real());
        im.add(z.imag());
    }
    double variance() const { return re.variance() + im.variance(); }
};

}  // namespace

double ks_critical_value(std::size_t n, double significance) {
    return std::sqrt(-std::log(significance / 2.0) / 2.0) / std::sqrt(static_cast<double>(n));
}

double kolmogorov_tail(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-18) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

GainFitReport validate_gain_distribution(const SystemConfig& config, const LosComponents& los,
                                         std::size_t n_samples, std::uint64_t seed,
                                         double significance) {
    if (n_samples < 1) throw InvalidParameter("validate_gain_distribution: n_samples must be >= 1");
    const RicianCoefficients kappa = rician_coefficients(config.K);
    const BeamformerSolution solution = design_proposed(config, los);

    GainFitReport report;
    report.n_samples = n_samples;
    report.stats = rice_gain_stats(solution, config, los);

    std::vector<double> gains(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        RandomStream stream(seed, i);
        const ChannelRealization r = sample_channel(los, kappa, stream);
        const cdouble ris = r.h.cwiseProduct(solution.psi).cwiseProduct(r.H * solution.f).sum();
        gains[i] = std::abs(ris + config.mu * bilinear(r.g, solution.f));
    }

    if (!(report.stats.sigma > 0.0)) {
        report.skipped = true;
        report.passed = true;
        for (double g : gains)
            report.max_deviation_from_nu = std::max(report.max_deviation_from_nu, std::abs(g - report.stats.nu));
        report.note = "sigma = 0: the gain is deterministic, KS test not applicable";
        return report;
    }

    std::sort(gains.begin(), gains.end());
    const double n = static_cast<double>(n_samples);
    const double scale = report.stats.scale();
    double d = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double cdf = rice_cdf(gains[i], report.stats.nu, scale);
        d = std::max({d, static_cast<double>(i + 1) / n - cdf, cdf - static_cast<double>(i) / n});
    }
    report.ks_statistic = d;
    report.critical_value = ks_critical_value(n_samples, significance);
    report.p_value = kolmogorov_tail(std::sqrt(n) * d);
    report.passed = d <= report.critical_value;
    return report;
}

bool ScatterMomentReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const MomentCheck& c) { return c.passed; });
}

ScatterMomentReport validate_scatter_moments(const SystemConfig& config, const LosComponents& los,
                                             std::size_t n_samples, std::uint64_t seed,
                                             double relative_tolerance) {
    if (n_samples < 2) throw InvalidParameter("validate_scatter_moments: n_samples must be >= 2");
    const BeamformerSolution solution = design_proposed(config, los);
    const CVector& f = solution.f;
    const CVector& psi = solution.psi;
    const double N = los.N();

    const CVector p = psi.cwiseProduct(los.h_bar);  // psi^T diag(h_bar)
    const CVector q = los.H_bar * f;  // H_bar f

    // Pure scatter draws (kappa = (0, 1)) give g_tilde, H_tilde, h_tilde.
    const RicianCoefficients scatter_only{0.0, 1.0};
    ComplexMoments a2, a3, a4, b2;
    for (std::size_t i = 0; i < n_samples; ++i) {
        RandomStream stream(seed, i);
        const ChannelRealization s = sample_channel(los, scatter_only, stream);
        const CVector q_tilde = s.H * f;
        const CVector p_tilde = psi.cwiseProduct(s.h);
        a2.add(bilinear(p, q_tilde));
        a3.add(bilinear(p_tilde, q));
        a4.add(bilinear(p_tilde, q_tilde));
        b2.add(bilinear(s.g, f));
    }

    const cdouble e0f = (los.cascade_row() * f)(0);
    const cdouble gf = bilinear(los.g_bar, f);
    const double h_bar_f_norm2 = q.squaredNorm();

    ScatterMomentReport report;
    report.n_samples = n_samples;
    report.checks.push_back(make_check("var_a2", a2.variance(), N, relative_tolerance));
    report.checks.push_back(make_check("var_a3", a3.variance(), h_bar_f_norm2, relative_tolerance));
    report.checks.push_back(make_check("var_a4", a4.variance(), N, relative_tolerance));
    report.checks.push_back(make_check("var_b2", b2.variance(), 1.0, relative_tolerance));

    // a1 = psi^T E f is deterministic: N |e0 f| e^{j arg(g_bar^T f)}.
    const cdouble a1 = bilinear(psi, los.E * f);
    const cdouble a1_expected = std::polar(N * std::abs(e0f), std::abs(gf) > 1e-12 ? std::arg(gf) : 0.0);
    MomentCheck a1_check = make_check("a1", std::abs(a1), std::abs(a1_expected), 1e-9);
    a1_check.relative_error = std::abs(a1 - a1_expected) / std::abs(a1_expected);
    a1_check.passed = a1_check.relative_error <= 1e-9;
    report.checks.push_back(a1_check);

    report.checks.push_back(
        make_check("h_bar_f_norm2", h_bar_f_norm2, N * std::norm(e0f), 1e-10));
    return report;
}

}  // namespace rismiso
