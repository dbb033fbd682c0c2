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

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "rismiso/analysis.hpp"
#include "rismiso/error.hpp"
#include "test_support.hpp"

using namespace rismiso;
using testing::rel_err;

namespace {

cdouble dot_t(const CVector& x, const CVector& y) { return x.cwiseProduct(y).sum(); }

// Rice(nu, s) pdf through the noncentral chi-square with 2 degrees of freedom.
double rice_pdf(double x, double nu, double s) {
    if (x <= 0.0) return 0.0;
    const boost::math::non_central_chi_squared d(2.0, nu * nu / (s * s));
    return 2.0 * x / (s * s) * boost::math::pdf(d, x * x / (s * s));
}

double rice_cdf_oracle(double x, double nu, double s) {
    const boost::math::non_central_chi_squared d(2.0, nu * nu / (s * s));
    return boost::math::cdf(d, x * x / (s * s));
}

// E[log2(1 + gamma X^2)] by direct integration against the density.
double capacity_density_oracle(double nu, double s, double gamma) {
    auto f = [&](double x) { return std::log2(1.0 + gamma * x * x) * rice_pdf(x, nu, s); };
    const double lo = std::max(0.0, nu - 40.0 * s), hi = nu + 40.0 * s;
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 30, 1e-13, &err);
}

}  // namespace

TEST_CASE("rice_gain_stats") {
    const SystemConfig c;
    const LosComponents los = build_los(c);
    const BeamformerSolution s = design_proposed(c, los);
    const auto [kl, kn] = rician_coefficients(c.K);
    const double e0f = std::abs((los.cascade_row() * s.f)(0));
    const double gf = std::abs(dot_t(los.g_bar, s.f));
    const RiceGainStats st = rice_gain_stats(s, c, los);
    CHECK(rel_err(st.nu, c.N * kl * kl * e0f + c.mu * kl * gf) < 1e-10);
    CHECK(rel_err(st.sigma * st.sigma, c.N * kn * kn * (1 + kl * kl * e0f * e0f) + c.mu * c.mu * kn * kn) < 1e-10);
    CHECK(rel_err(st.scale(), st.sigma / std::sqrt(2.0)) < 1e-15);

    // nu = |m| with m the mean of the effective gain.
    const cdouble m = kl * kl * dot_t(s.psi, los.E * s.f) + c.mu * kl * dot_t(los.g_bar, s.f);
    CHECK(rel_err(st.nu, std::abs(m)) < 1e-10);
    CHECK(std::abs(std::arg(m) - st.mean_phase) < 1e-9);

    SUBCASE("mu = 0") {
        SystemConfig c0 = c;
        c0.mu = 0.0;
        const LosComponents l0 = build_los(c0);
        const BeamformerSolution s0 = design_proposed(c0, l0);
        const double e = std::abs((l0.cascade_row() * s0.f)(0));
        const RiceGainStats r = rice_gain_stats(s0, c0, l0);
        CHECK(rel_err(r.nu, c0.N * kl * kl * e) < 1e-10);
        CHECK(rel_err(r.sigma * r.sigma, c0.N * kn * kn * (1 + kl * kl * e * e)) < 1e-10);
    }

    SUBCASE("LoS only") {
        SystemConfig ci = c;
        ci.K = std::numeric_limits<double>::infinity();
        const LosComponents li = build_los(ci);
        const RiceGainStats r = rice_gain_stats(design_proposed(ci, li), ci, li);
        CHECK(r.sigma == 0.0);
        CHECK(r.nu > 0.0);
        CHECK_THROWS_AS(outage_analytical(1.0, r, ci.gamma), DegenerateStats);
    }

    SUBCASE("degenerate solution") {
        SystemConfig cd;
        cd.M = 2;
        cd.theta_dd = 0.0;
        cd.theta_di1 = 0.0;
        const LosComponents ld = build_los(cd);
        BeamformerSolution bad;
        bad.f = CVector(2);
        bad.f << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
        bad.psi = CVector::Ones(cd.N);
        CHECK_THROWS_AS(rice_gain_stats(bad, cd, ld), DegenerateStats);
    }
}

TEST_CASE("rice_cdf against the noncentral chi-square") {
    testing::Gen gen(21);
    for (int t = 0; t < 500; ++t) {
        const double nu = gen.uniform(0.0, 60.0), s = gen.uniform(0.2, 5.0);
        const double x = gen.uniform(0.0, nu + 6.0 * s);
        CHECK(std::abs(rice_cdf(x, nu, s) - rice_cdf_oracle(x, nu, s)) < 1e-12);
    }
    CHECK(rice_cdf(0.0, 3.0, 1.0) == 0.0);
}

TEST_CASE("outage_analytical") {
    const SystemConfig c;
    const LosComponents los = build_los(c);
    const RiceGainStats st = rice_gain_stats(design_proposed(c, los), c, los);

    CHECK(outage_analytical(0.0, st, c.gamma) == 0.0);
    const double far = 1e12 * c.gamma * (st.nu * st.nu + st.sigma * st.sigma);
    CHECK(outage_analytical(far, st, c.gamma) > 1.0 - 1e-9);

    double prev = 0.0;
    for (double db = 20.0; db <= 40.0; db += 0.5) {
        const double beta = std::pow(10.0, db / 10.0);
        const double p = outage_analytical(beta, st, c.gamma);
        CHECK(p >= prev);
        prev = p;
        const double want = rice_cdf_oracle(std::sqrt(beta / c.gamma), st.nu, st.scale());
        CHECK(std::abs(p - want) < 1e-12);
    }
    // The threshold region sits inside the default grid.
    CHECK(outage_analytical(std::pow(10.0, 2.0), st, c.gamma) < 1e-6);
    CHECK(outage_analytical(std::pow(10.0, 4.0), st, c.gamma) > 1.0 - 1e-6);

    CHECK_THROWS_AS(outage_analytical(-1.0, st, c.gamma), InvalidParameter);
    CHECK_THROWS_AS(outage_analytical(1.0, st, 0.0), InvalidParameter);
}

TEST_CASE("ergodic_capacity_analytical") {
    SUBCASE("against direct integration over the density") {
        testing::Gen gen(22);
        for (int t = 0; t < 40; ++t) {
            RiceGainStats st;
            st.nu = gen.uniform(0.0, 100.0);
            st.sigma = gen.uniform(0.1, 10.0);
            const double gamma = std::pow(10.0, gen.uniform(-2.0, 2.0));
            const double ec = ergodic_capacity_analytical(st, gamma);
            const double want = capacity_density_oracle(st.nu, st.scale(), gamma);
            CHECK(rel_err(ec, want) < 1e-7);
        }
    }

    SUBCASE("defaults") {
        const SystemConfig c;
        const LosComponents los = build_los(c);
        const RiceGainStats st = rice_gain_stats(design_proposed(c, los), c, los);
        const double ec = ergodic_capacity_analytical(st, c.gamma);
        CHECK(rel_err(ec, capacity_density_oracle(st.nu, st.scale(), c.gamma)) < 1e-8);
        CHECK(ergodic_capacity_analytical(st, 2.0 * c.gamma) > ec);
    }

    SUBCASE("vanishing SNR") {
        RiceGainStats st;
        st.nu = 0.0;
        st.sigma = 1e-3;
        CHECK(ergodic_capacity_analytical(st, 1e-9) < 1e-12);
    }

    SUBCASE("tolerance that cannot be met") {
        RiceGainStats st;
        st.nu = 10.0;
        st.sigma = 1.0;
        QuadratureSpec q;
        q.relative_tolerance = 1e-15;
        q.max_subdivisions = 1;
        CHECK_THROWS_AS(ergodic_capacity_analytical(st, 1.0, q), IntegrationError);
        q.relative_tolerance = 0.0;
        CHECK_THROWS_AS(ergodic_capacity_analytical(st, 1.0, q), InvalidParameter);
    }
}
