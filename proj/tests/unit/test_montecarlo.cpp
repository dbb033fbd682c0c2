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

#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "rismiso/analysis.hpp"
#include "rismiso/error.hpp"
#include "rismiso/montecarlo.hpp"
#include "test_support.hpp"

using namespace rismiso;

TEST_CASE("RunningMoments merge matches a single pass") {
    testing::Gen gen(31);
    std::vector<double> xs(1000);
    for (auto& x : xs) x = gen.uniform(-5.0, 20.0);
    RunningMoments all, a, b;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        all.add(xs[i]);
        (i < 337 ? a : b).add(xs[i]);
    }
    a.merge(b);
    CHECK(a.count == all.count);
    CHECK(a.mean == doctest::Approx(all.mean).epsilon(1e-13));
    CHECK(a.variance() == doctest::Approx(all.variance()).epsilon(1e-12));

    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= xs.size();
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= xs.size() - 1;
    CHECK(all.mean == doctest::Approx(mean).epsilon(1e-13));
    CHECK(all.variance() == doctest::Approx(var).epsilon(1e-12));
    CHECK(all.standard_error() == doctest::Approx(std::sqrt(var / xs.size())).epsilon(1e-12));
}

TEST_CASE("simulate is deterministic across worker counts") {
    const SystemConfig c;
    const LosComponents los = build_los(c);
    for (std::size_t n : {std::size_t{1}, std::size_t{3000}}) {
        SimulationPlan plan;
        plan.n_samples = n;
        plan.seed = 42;
        plan.beta_grid_db = {30.0, 34.0, 35.0, 36.0};
        plan.workers = 1;
        const EmpiricalResult one = simulate(plan, c, los);
        plan.workers = 8;
        const EmpiricalResult eight = simulate(plan, c, los);
        const EmpiricalResult again = simulate(plan, c, los);
        for (Scheme s : {Scheme::Proposed, Scheme::MaxMeanSnr, Scheme::MaxSnr}) {
            CHECK(one.at(s).capacity == eight.at(s).capacity);
            CHECK(one.at(s).capacity_se == eight.at(s).capacity_se);
            CHECK(one.at(s).mean_snr == eight.at(s).mean_snr);
            CHECK(one.at(s).outage == eight.at(s).outage);
            CHECK(again.at(s).capacity == eight.at(s).capacity);
        }
        CHECK(one.max_snr_below_proposed == 0);
    }
}

TEST_CASE("simulate: scheme ordering and agreement with the analysis") {
    const SystemConfig c;
    const LosComponents los = build_los(c);
    SimulationPlan plan;
    plan.n_samples = 20000;
    plan.seed = 7;
    plan.beta_grid_db = {33.0, 34.0, 35.0, 36.0};
    const EmpiricalResult r = simulate(plan, c, los);
    CHECK(r.max_snr_below_proposed == 0);
    const auto& p = r.at(Scheme::Proposed);
    const auto& mm = r.at(Scheme::MaxMeanSnr);
    const auto& ms = r.at(Scheme::MaxSnr);
    CHECK(ms.capacity >= mm.capacity);
    CHECK(mm.capacity + 2.0 * std::hypot(mm.capacity_se, p.capacity_se) >= p.capacity);
    for (std::size_t b = 0; b < plan.beta_grid_db.size(); ++b) CHECK(ms.outage[b] <= p.outage[b]);

    const BeamformerSolution sol = design_proposed(c, los);
    const RiceGainStats st = rice_gain_stats(sol, c, los);
    for (std::size_t b = 0; b < plan.beta_grid_db.size(); ++b) {
        const double pa = outage_analytical(std::pow(10.0, plan.beta_grid_db[b] / 10.0), st, c.gamma);
        CHECK(std::abs(p.outage[b] - pa) < 0.015);
    }
    CHECK(std::abs(p.capacity - ergodic_capacity_analytical(st, c.gamma)) / p.capacity < 0.01);
    // Mean SNR of the proposed scheme against its closed form.
    CHECK(std::abs(p.mean_snr - mean_snr_exact(sol.f, sol.psi, c, los)) < 4.0 * p.mean_snr_se);
}

TEST_CASE("simulate: LoS-only link has a step outage") {
    SystemConfig c;
    c.K = std::numeric_limits<double>::infinity();
    const LosComponents los = build_los(c);
    const RiceGainStats st = rice_gain_stats(design_proposed(c, los), c, los);
    const double step_db = 10.0 * std::log10(c.gamma * st.nu * st.nu);
    SimulationPlan plan;
    plan.n_samples = 100;
    plan.schemes = {Scheme::Proposed};
    plan.beta_grid_db = {step_db - 0.01, step_db + 0.01};
    const EmpiricalResult r = simulate(plan, c, los);
    CHECK(r.at(Scheme::Proposed).outage[0] == 0.0);
    CHECK(r.at(Scheme::Proposed).outage[1] == 1.0);
    CHECK_FALSE(r.has(Scheme::MaxSnr));
    CHECK_THROWS_AS(r.at(Scheme::MaxSnr), InvalidParameter);
}

TEST_CASE("plan validation") {
    const SystemConfig c;
    const LosComponents los = build_los(c);
    SimulationPlan plan;
    plan.n_samples = 0;
    CHECK_THROWS_AS(simulate(plan, c, los), InvalidParameter);
    plan.n_samples = 10;
    plan.beta_grid_db = {3.0, 3.0};
    CHECK_THROWS_AS(simulate(plan, c, los), InvalidParameter);
    plan.beta_grid_db = {};
    plan.schemes = {};
    CHECK_THROWS_AS(simulate(plan, c, los), InvalidParameter);
}

TEST_CASE("Kolmogorov distribution helpers") {
    CHECK(kolmogorov_tail(0.0) == 1.0);
    CHECK(kolmogorov_tail(1.6276) == doctest::Approx(0.01).epsilon(1e-3));
    CHECK(kolmogorov_tail(1.3581) == doctest::Approx(0.05).epsilon(1e-3));
    CHECK(ks_critical_value(10000, 0.01) == doctest::Approx(1.62762 / 100.0).epsilon(1e-4));
}

TEST_CASE("gain distribution check") {
    SUBCASE("LoS-only: all samples equal nu") {
        SystemConfig c;
        c.K = std::numeric_limits<double>::infinity();
        const LosComponents los = build_los(c);
        const GainFitReport r = validate_gain_distribution(c, los, 500, 1);
        CHECK(r.skipped);
        CHECK(r.passed);
        CHECK(r.max_deviation_from_nu <= 1e-9 * r.stats.nu);
        CHECK_FALSE(r.note.empty());
    }

    SUBCASE("small sample fit at defaults") {
        const SystemConfig c;
        const LosComponents los = build_los(c);
        const GainFitReport r = validate_gain_distribution(c, los, 5000, 3);
        CHECK_FALSE(r.skipped);
        CHECK(r.passed);
        CHECK(r.ks_statistic < r.critical_value);
        CHECK(r.p_value > 0.01);
    }
}

TEST_CASE("scatter moments at defaults") {
    const SystemConfig c;
    const LosComponents los = build_los(c);
    const ScatterMomentReport r = validate_scatter_moments(c, los, 100000, 5);
    CHECK(r.passed());
    CHECK(r.checks.size() >= 4);
    for (const MomentCheck& m : r.checks) {
        INFO(m.name << " measured " << m.measured << " expected " << m.expected);
        CHECK(m.passed);
    }
}
