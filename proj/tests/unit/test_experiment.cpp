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
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "rismiso/analysis.hpp"
#include "rismiso/experiment.hpp"

using namespace rismiso;

namespace {

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "rismiso_unit";
    std::filesystem::create_directories(dir);
    return dir / name;
}

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.samples = 2000;
    c.outage_samples = 2000;
    c.workers = 1;
    return c;
}

}  // namespace

TEST_CASE("empty config reproduces the reference setting") {
    const ExperimentConfig c = parse_experiment_config("");
    CHECK(c.system.M == 4);
    CHECK(c.system.N == 32);
    CHECK(c.system.K == 5.0);
    CHECK(c.system.theta_dd == 0.0);
    CHECK(c.system.theta_di1 == doctest::Approx(std::numbers::pi / 4));
    CHECK(c.system.theta_di2 == doctest::Approx(8 * std::numbers::pi / 5));
    CHECK(c.system.gamma == 1.0);
    CHECK(c.system.mu == doctest::Approx(std::pow(10.0, 0.5)).epsilon(1e-15));
    CHECK(c.beta_db == default_beta_grid_db());
    CHECK(c.beta_db.front() == 20.0);
    CHECK(c.beta_db.back() == 40.0);
    CHECK(c.n_values == std::vector<int>{8, 16, 32, 64});
    CHECK(c.theta.values().size() == 9);
    CHECK(c.samples == 100000);
    CHECK(c.outage_samples == 1000000);
}

TEST_CASE("config parsing") {
    const ExperimentConfig c = parse_experiment_config(R"(
# comment
[system]
N = 16          # trailing comment
K = inf
theta_di1 = 3*pi/8
gamma_db = 10
mu_db = -5

[simulation]
samples = 500
seed = 99
schemes = ["proposed", "maxsnr"]

[outage]
beta_db = [1, 2.5, 4]

[sweep]
n_values = [4, 8]
theta_step = pi/8

[output]
dir = "out dir"
)");
    CHECK(c.system.N == 16);
    CHECK(std::isinf(c.system.K));
    CHECK(c.system.theta_di1 == doctest::Approx(3 * std::numbers::pi / 8).epsilon(1e-15));
    CHECK(c.system.gamma == doctest::Approx(10.0));
    CHECK(c.system.mu == doctest::Approx(std::pow(10.0, -0.5)));
    CHECK(c.samples == 500);
    CHECK(c.seed == 99);
    CHECK(c.schemes == std::vector<Scheme>{Scheme::Proposed, Scheme::MaxSnr});
    CHECK(c.beta_db == std::vector<double>{1, 2.5, 4});
    CHECK(c.n_values == std::vector<int>{4, 8});
    CHECK(c.theta.values().size() == 5);
    CHECK(c.output_dir == "out dir");

    const ExperimentConfig r = parse_experiment_config("[outage]\nbeta_db_start = 0\nbeta_db_stop = 3\nbeta_db_step = 1\n");
    CHECK(r.beta_db == std::vector<double>{0, 1, 2, 3});
}

TEST_CASE("config errors carry line and field") {
    auto line_of = [](std::string_view text) {
        try {
            (void)parse_experiment_config(text);
        } catch (const ConfigError& e) {
            return std::make_pair(e.line(), std::string(e.what()));
        }
        return std::make_pair(-1, std::string());
    };
    auto [l1, m1] = line_of("[system]\nK = -1\n");
    CHECK(l1 == 2);
    CHECK(m1.find("system.K") != std::string::npos);

    auto [l2, m2] = line_of("[system]\nM = 4\nfoo = 1\n");
    CHECK(l2 == 3);
    CHECK(m2.find("unknown key") != std::string::npos);

    CHECK(line_of("[bogus]\n").first == 1);
    CHECK(line_of("[system]\nN = 3.5\n").first == 2);
    CHECK(line_of("[system]\nN = 0\n").first == 2);
    CHECK(line_of("[system]\nN = 8\nN = 9\n").first == 3);
    CHECK(line_of("N = 8\n").first == 1);
    CHECK(line_of("[system]\ntheta_dd = inf\n").first == 2);
    CHECK(line_of("[outage]\nbeta_db = [3, 2]\n").first == 2);
    CHECK(line_of("[simulation]\nschemes = [\"best\"]\n").first == 2);
    CHECK(line_of("[system]\nmu_db = abc\n").first == 2);
    CHECK(line_of("[system\n").first == 1);

    CHECK_THROWS_AS(load_experiment_config(scratch("does_not_exist.toml")), ConfigError);
}

TEST_CASE("number formatting round trips") {
    for (double v : {0.0, -0.0, 1.0, 1.0 / 3.0, 6.02214076e23, -1e-300, 3.1622776601683795}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
        CHECK(s.find(',') == std::string::npos);
    }
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");

    for (cdouble z : {cdouble(1.5, -2.25), cdouble(0, 0), cdouble(-1e-17, 3e5), cdouble(1.0 / 7.0, -0.0)}) {
        const cdouble back = parse_complex(format_complex(z));
        CHECK(back.real() == z.real());
        CHECK(back.imag() == z.imag());
    }
    CHECK(format_complex({1.0, -2.0}) == "1-2j");
    CHECK(format_complex({0.5, 0.25}) == "0.5+0.25j");
    CHECK(parse_complex("1e-3+2e+2j") == cdouble(1e-3, 2e2));
}

TEST_CASE("design command and solution file") {
    const ExperimentConfig c = small_config();
    const SolutionRecord r = run_design(c);
    const auto path = scratch("solution.txt");
    write_solution_file(path, r);
    const SolutionRecord back = read_solution_file(path);
    CHECK(back.solution.f == r.solution.f);
    CHECK(back.solution.psi == r.solution.psi);
    CHECK(back.nu == r.nu);
    CHECK(back.sigma == r.sigma);

    // nu and sigma recomputed from the written beamformer.
    const LosComponents los = build_los(c.system);
    const RiceGainStats st = rice_gain_stats(back.solution, c.system, los);
    CHECK(std::abs(st.nu - back.nu) <= 1e-12 * st.nu);
    CHECK(std::abs(st.sigma - back.sigma) <= 1e-12 * st.sigma);
    CHECK(back.lower_bound_mean_snr <= back.mean_snr_exact);

    ExperimentConfig tiny = c;
    tiny.mu_db = -200.0;
    tiny.system.mu = std::pow(10.0, -20.0);
    const SolutionRecord t = run_design(tiny);
    CVector want(4);
    for (int m = 0; m < 4; ++m) want[m] = std::polar(0.5, m * tiny.system.theta_di1);
    CHECK(std::abs(std::abs(want.dot(t.solution.f)) - 1.0) < 1e-10);
}

TEST_CASE("outage table") {
    ExperimentConfig c = small_config();
    const CsvTable a = run_outage(c);
    const CsvTable b = run_outage(c);
    CHECK(a.header == kOutageColumns);
    REQUIRE(a.rows.size() == c.beta_db.size());
    CHECK(a.rows == b.rows);
    const std::size_t pa = a.column("pout_analytical"), ms = a.column("pout_mc_maxsnr"), se = a.column("se_maxsnr");
    CHECK(a.rows.front()[pa] > 0.0);
    CHECK(a.rows.front()[pa] < 1.0);
    // A standard error of 0 at p = 0 or 1 is floored at one sample's worth.
    const double floor = 1.0 / double(c.outage_samples);
    for (const auto& row : a.rows) CHECK(row[pa] >= row[ms] - 2.0 * std::max(row[se], floor));

    const auto path = scratch("outage.csv");
    write_csv(path, a);
    const CsvTable back = read_csv(path);
    CHECK(back.header == a.header);
    CHECK(back.rows == a.rows);

    c.schemes = {Scheme::Proposed};
    const CsvTable only = run_outage(c);
    CHECK(std::isnan(only.rows[0][only.column("pout_mc_maxsnr")]));
    CHECK_THROWS_AS(only.column("missing"), Error);
}

TEST_CASE("capacity sweeps") {
    ExperimentConfig c = small_config();
    c.schemes = {Scheme::Proposed};
    const CsvTable n = run_capacity_sweep(c, SweepKind::N);
    CHECK(n.header == kCapacityColumns);
    REQUIRE(n.rows.size() == 4);
    const std::size_t ec = n.column("ec_analytical_proposed");
    for (std::size_t i = 1; i < n.rows.size(); ++i) CHECK(n.rows[i][ec] > n.rows[i - 1][ec]);

    const CsvTable th = run_capacity_sweep(c, SweepKind::Theta);
    REQUIRE(th.rows.size() == 9);
    CHECK(th.rows.front()[0] == 0.0);
    for (std::size_t i = 1; i < th.rows.size(); ++i) {
        CHECK(th.rows[i][ec] < th.rows.front()[ec]);
        CHECK(th.rows[i][ec] > th.rows.back()[ec] - 1e-12);
    }

    const CsvTable mu = run_capacity_sweep(c, SweepKind::Mu);
    CHECK(mu.rows.size() == 10);
    CHECK(mu.rows[0][1] == 0.0);
    CHECK(mu.rows[5][1] == 10.0);
    CHECK(sweep_name(SweepKind::Mu) == "mu");
}

TEST_CASE("validate command") {
    ExperimentConfig c = small_config();
    ValidationReport r = run_validate(c);
    CHECK(r.passed());
    CHECK(r.render().find("RESULT PASS") != std::string::npos);

    c.system.K = std::numeric_limits<double>::infinity();
    r = run_validate(c);
    CHECK(r.passed());
    const std::string text = r.render();
    CHECK(text.find("SKIP  gain.rice_ks") != std::string::npos);
    CHECK(text.find("PASS  gain.deterministic") != std::string::npos);
}
