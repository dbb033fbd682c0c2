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
#include <sstream>

#include "rismiso/experiment.hpp"
#include "rismiso/marcum.hpp"
#include "rismiso/montecarlo.hpp"
#include "rismiso/quadrature.hpp"
#include "rismiso/random.hpp"

namespace rismiso {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

cdouble bilinear(const CVector& x, const CVector& y) { return x.cwiseProduct(y).sum(); }

SimulationPlan make_plan(const ExperimentConfig& config, std::size_t samples, std::vector<double> beta_db) {
    SimulationPlan plan;
    plan.n_samples = samples;
    plan.seed = config.seed;
    plan.beta_grid_db = std::move(beta_db);
    plan.schemes = config.schemes;
    plan.workers = config.workers;
    return plan;
}

// Outage of a deterministic gain (sigma = 0): a step at beta = gamma nu^2.
double outage_or_step(double beta, const RiceGainStats& stats, double gamma) {
    if (stats.sigma > 0.0) return outage_analytical(beta, stats, gamma);
    return beta >= gamma * stats.nu * stats.nu ? 1.0 : 0.0;
}

double capacity_or_deterministic(const RiceGainStats& stats, double gamma, const QuadratureSpec& quad) {
    if (stats.sigma > 0.0) return ergodic_capacity_analytical(stats, gamma, quad);
    return std::log2(1.0 + gamma * stats.nu * stats.nu);
}

void append_mc(std::vector<double>& row, const EmpiricalResult& mc, Scheme scheme, bool capacity,
               std::size_t beta_index = 0) {
    if (!mc.has(scheme)) {
        row.push_back(kNaN);
        row.push_back(kNaN);
        return;
    }
    const SchemeEstimate& e = mc.at(scheme);
    row.push_back(capacity ? e.capacity : e.outage[beta_index]);
    row.push_back(capacity ? e.capacity_se : e.outage_se[beta_index]);
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

std::string_view sweep_name(SweepKind kind) {
    switch (kind) {
        case SweepKind::N: return "n";
        case SweepKind::Mu: return "mu";
        case SweepKind::Theta: return "theta";
    }
    return "unknown";
}

SolutionRecord run_design(const ExperimentConfig& config) {
    const SystemConfig& sys = config.system;
    const LosComponents los = build_los(sys);
    SolutionRecord record;
    record.solution = design_proposed(sys, los);

    const BeamformerSolution& s = record.solution;
    if (std::abs(s.f.norm() - 1.0) > 1e-10) throw Error("design: beamformer is not unit norm");
    if ((s.psi.cwiseAbs().array() - 1.0).abs().maxCoeff() > 1e-10)
        throw Error("design: RIS phases are not unit modulus");

    const QuadraticForm form = build_quadratic_form(los, compute_weights(sys));
    record.quadratic_objective = s.f.dot(form.Z * s.f).real();
    record.lower_bound_mean_snr = lower_bound_mean_snr(s.f, sys, los);
    record.mean_snr_exact = mean_snr_exact(s.f, s.psi, sys, los);
    const RiceGainStats stats = rice_gain_stats(s, sys, los);
    record.nu = stats.nu;
    record.sigma = stats.sigma;
    return record;
}

CsvTable run_outage(const ExperimentConfig& config) {
    const SystemConfig& sys = config.system;
    const LosComponents los = build_los(sys);
    const BeamformerSolution proposed = design_proposed(sys, los);
    const RiceGainStats stats = rice_gain_stats(proposed, sys, los);
    const EmpiricalResult mc = simulate(make_plan(config, config.outage_samples, config.beta_db), sys, los);

    CsvTable table{kOutageColumns, {}};
    for (std::size_t b = 0; b < config.beta_db.size(); ++b) {
        const double beta = std::pow(10.0, config.beta_db[b] / 10.0);
        std::vector<double> row{config.beta_db[b], outage_or_step(beta, stats, sys.gamma)};
        append_mc(row, mc, Scheme::Proposed, false, b);
        append_mc(row, mc, Scheme::MaxMeanSnr, false, b);
        append_mc(row, mc, Scheme::MaxSnr, false, b);
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable run_capacity_sweep(const ExperimentConfig& config, SweepKind kind) {
    struct Point {
        double sweep_value;
        double gamma_db;
        SystemConfig system;
    };
    std::vector<Point> points;
    const SystemConfig& base = config.system;
    switch (kind) {
        case SweepKind::N:
            for (int n : config.n_values) {
                SystemConfig s = base;
                s.N = n;
                points.push_back({static_cast<double>(n), config.gamma_db, s});
            }
            break;
        case SweepKind::Mu:
            for (double g_db : config.mu_sweep_gamma_db) {
                for (double m_db : config.mu_db_values) {
                    SystemConfig s = base;
                    const LinkBudget lb = link_budget_from_db(g_db, m_db);
                    s.gamma = lb.gamma;
                    s.mu = lb.mu;
                    points.push_back({m_db, g_db, s});
                }
            }
            break;
        case SweepKind::Theta:
            // theta = theta_DI1 - theta_DD with theta_DD held fixed.
            for (double theta : config.theta.values()) {
                SystemConfig s = base;
                s.theta_di1 = base.theta_dd + theta;
                points.push_back({theta, config.gamma_db, s});
            }
            break;
    }

    CsvTable table{kCapacityColumns, {}};
    for (const Point& p : points) {
        const LosComponents los = build_los(p.system);
        const BeamformerSolution proposed = design_proposed(p.system, los);
        const RiceGainStats stats = rice_gain_stats(proposed, p.system, los);
        const EmpiricalResult mc = simulate(make_plan(config, config.samples, {}), p.system, los);

        std::vector<double> row{p.sweep_value, p.gamma_db,
                                capacity_or_deterministic(stats, p.system.gamma, config.quadrature)};
        append_mc(row, mc, Scheme::Proposed, true);
        append_mc(row, mc, Scheme::MaxMeanSnr, true);
        append_mc(row, mc, Scheme::MaxSnr, true);
        table.rows.push_back(std::move(row));
    }
    return table;
}

bool ValidationReport::passed() const {
    return std::none_of(lines.begin(), lines.end(),
                        [](const CheckLine& l) { return l.status == CheckLine::Status::Fail; });
}

std::string ValidationReport::render() const {
    std::ostringstream out;
    for (const CheckLine& l : lines) {
        const char* tag = l.status == CheckLine::Status::Pass ? "PASS" : l.status == CheckLine::Status::Fail ? "FAIL" : "SKIP";
        out << tag << "  " << l.name << "  " << l.detail << "\n";
    }
    out << (passed() ? "RESULT PASS" : "RESULT FAIL") << "\n";
    return out.str();
}

ValidationReport run_validate(const ExperimentConfig& config) {
    using Status = CheckLine::Status;
    ValidationReport report;
    auto check = [&](std::string name, bool ok, std::string detail) {
        report.lines.push_back({std::move(name), ok ? Status::Pass : Status::Fail, std::move(detail)});
    };
    auto skip = [&](std::string name, std::string reason) {
        report.lines.push_back({std::move(name), Status::Skip, std::move(reason)});
    };

    const SystemConfig& sys = config.system;
    const LosComponents los = build_los(sys);
    const auto [kl, kn] = rician_coefficients(sys.K);
    const double N = sys.N;
    const double mu = sys.mu;

    check("rician_coefficients.unit_power", std::abs(kl * kl + kn * kn - 1.0) <= 1e-12,
          "kl^2 + kn^2 - 1 = " + fmt(kl * kl + kn * kn - 1.0));

    {
        double worst = 0.0;
        auto track = [&](const auto& m) { worst = std::max(worst, (m.cwiseAbs().array() - 1.0).abs().maxCoeff()); };
        track(los.g_bar);
        track(los.H_bar);
        track(los.h_bar);
        track(los.E);
        check("los.unit_modulus", worst <= 1e-12, "max ||x| - 1| = " + fmt(worst));

        double rank_dev = 0.0;
        const CRowVector e0 = los.cascade_row();
        for (Eigen::Index n = 1; n < los.E.rows(); ++n) {
            const cdouble ratio = los.E(n, 0) / e0[0];
            rank_dev = std::max(rank_dev, (los.E.row(n) - ratio * e0).norm());
        }
        check("los.cascade_rank_one", rank_dev <= 1e-10, "max row deviation = " + fmt(rank_dev));
    }

    // Deterministic identities over random unit beamformers.
    if (kl > 0.0) {
        const ObjectiveWeights w = compute_weights(sys);
        double worst_row = 0.0, worst_cascade = 0.0, worst_coherent = 0.0, worst_objective = 0.0, worst_los = 0.0,
               worst_gap = 0.0;
        for (std::uint64_t i = 0; i < 1000; ++i) {
            RandomStream stream(config.seed ^ 0x5eed1de5ULL, i);
            CVector f(sys.M);
            for (auto& x : f) x = stream.complex_normal();
            f.normalize();

            const CVector Ef = los.E * f;
            const double e0f = std::abs(Ef[0]);
            const double gf = std::abs(bilinear(los.g_bar, f));
            const double row_spread = Ef.cwiseAbs().maxCoeff() - Ef.cwiseAbs().minCoeff();
            worst_row = std::max(worst_row, row_spread / std::max(e0f, 1e-300));
            worst_cascade = std::max(worst_cascade, std::abs(Ef.squaredNorm() - N * e0f * e0f) / (N * e0f * e0f));
            const double hf2 = (los.H_bar * f).squaredNorm();
            worst_los = std::max(worst_los, std::abs(hf2 - N * e0f * e0f) / (N * e0f * e0f));

            const CVector psi = phase_shift_for(f, los);
            const double coherent = std::norm(kl * kl * bilinear(psi, Ef) + mu * kl * bilinear(los.g_bar, f));
            const double expanded = N * N * std::pow(kl, 4) * e0f * e0f + mu * mu * kl * kl * gf * gf +
                                    2.0 * N * std::pow(kl, 3) * mu * e0f * gf;
            worst_coherent = std::max(worst_coherent, std::abs(coherent - expanded) / expanded);
            const double modified = w.w1 * e0f * e0f + w.w2 * gf * gf + w.w3 * e0f * gf;
            const double objective = coherent + kl * kl * kn * kn * hf2;
            worst_objective = std::max(worst_objective, std::abs(objective - modified) / modified);
            const double gap = mean_snr_exact(f, psi, sys, los) - lower_bound_mean_snr(f, sys, los);
            const double predicted = sys.gamma * w.w3 * e0f * gf;
            worst_gap = std::max(worst_gap, std::abs(gap - predicted) / mean_snr_exact(f, psi, sys, los));
        }
        check("identity.row_gain_equal", worst_row <= 1e-10, "max relative spread = " + fmt(worst_row));
        check("identity.cascade_norm", worst_cascade <= 1e-9, "max relative error = " + fmt(worst_cascade));
        check("identity.coherent_expansion", worst_coherent <= 1e-9, "max relative error = " + fmt(worst_coherent));
        check("identity.modified_objective", worst_objective <= 1e-9, "max relative error = " + fmt(worst_objective));
        check("identity.los_norm", worst_los <= 1e-9, "max relative error = " + fmt(worst_los));
        check("identity.lower_bound_gap", worst_gap <= 1e-9, "max relative error = " + fmt(worst_gap));
    } else {
        skip("identity.*", "K = 0: no LoS component, the proposed scheme is undefined");
        report.lines.push_back({"design", Status::Skip, "proposed scheme requires K > 0"});
        return report;
    }

    const BeamformerSolution proposed = design_proposed(sys, los);
    {
        const double norm_err = std::abs(proposed.f.norm() - 1.0);
        const double mod_err = (proposed.psi.cwiseAbs().array() - 1.0).abs().maxCoeff();
        check("design.constraints", norm_err <= 1e-10 && mod_err <= 1e-10,
              "| ||f|| - 1 | = " + fmt(norm_err) + ", max ||psi_k| - 1| = " + fmt(mod_err));

        const QuadraticForm form = build_quadratic_form(los, compute_weights(sys));
        const Eigenpair pair = principal_eigenpair(form.Z);
        check("design.eigen_residual", pair.residual <= 1e-12 * pair.value,
              "residual / lambda = " + fmt(pair.residual / pair.value));

        const AlternatingResult mm = design_max_mean_snr(sys, los, proposed);
        bool monotone = true;
        for (std::size_t i = 1; i < mm.trace.size(); ++i)
            if (mm.trace[i] < mm.trace[i - 1] * (1.0 - 1e-12)) monotone = false;
        const double exact_mm = mean_snr_exact(mm.solution.f, mm.solution.psi, sys, los);
        const double exact_p = mean_snr_exact(proposed.f, proposed.psi, sys, los);
        const double lb = lower_bound_mean_snr(proposed.f, sys, los);
        check("design.ordering", exact_mm >= exact_p && exact_p >= lb && monotone,
              "maxmean = " + fmt(exact_mm) + ", proposed = " + fmt(exact_p) + ", lower bound = " + fmt(lb));
    }

    {
        double worst = 0.0;
        for (double a : {0.0, 0.5, 2.0, 7.5}) worst = std::max(worst, std::abs(marcum_q1(a, 0.0) - 1.0));
        for (double b : {0.1, 1.0, 3.0, 8.0}) worst = std::max(worst, std::abs(marcum_q1(0.0, b) - std::exp(-b * b / 2)));
        check("marcum.special_values", worst <= 1e-12, "max error = " + fmt(worst));
    }

    const RiceGainStats stats = rice_gain_stats(proposed, sys, los);
    if (stats.sigma > 0.0) {
        double previous = 0.0;
        bool monotone = true;
        for (double db : config.beta_db) {
            const double p = outage_analytical(std::pow(10.0, db / 10.0), stats, sys.gamma);
            if (p < previous || p < 0.0 || p > 1.0) monotone = false;
            previous = p;
        }
        const double far = outage_analytical(1e12 * sys.gamma * (stats.nu * stats.nu + stats.sigma * stats.sigma), stats, sys.gamma);
        check("outage.cdf", monotone && outage_analytical(0.0, stats, sys.gamma) == 0.0 && far > 1.0 - 1e-9,
              "monotone over grid, P(0) = 0, P(inf) = " + fmt(far));

        // Capacity through the Marcum tail integral vs. direct integration
        // of log2(1 + gamma x^2) against the Rice density.
        const double ec = ergodic_capacity_analytical(stats, sys.gamma, config.quadrature);
        const double s = stats.scale();
        const double a = stats.nu / s;
        auto density_term = [&](double x) {
            const double ie0 = scaled_bessel_i_sequence(a * x, 0)[0];
            return std::log2(1.0 + sys.gamma * s * s * x * x) * x * std::exp(-0.5 * (x - a) * (x - a)) * ie0;
        };
        const double lo = std::max(0.0, a - 40.0);
        const std::array<double, 1> mid{a};
        const QuadratureResult direct = integrate_adaptive(density_term, lo, a + 40.0, 1e-10, 2000, mid);
        const double rel = std::abs(ec - direct.value) / direct.value;
        check("capacity.density_consistency", rel <= 1e-6,
              "tail integral = " + fmt(ec) + ", density integral = " + fmt(direct.value));

        const GainFitReport fit = validate_gain_distribution(sys, los, config.samples, config.seed);
        check("gain.rice_ks", fit.passed,
              "D = " + fmt(fit.ks_statistic) + ", critical(1%) = " + fmt(fit.critical_value) +
                  ", p = " + fmt(fit.p_value) + ", n = " + std::to_string(fit.n_samples));
    } else {
        skip("outage.cdf", "sigma = 0 (K = inf): degenerate Rice, the gain is the constant nu");
        skip("capacity.density_consistency", "sigma = 0 (K = inf): degenerate Rice");
        const GainFitReport fit = validate_gain_distribution(sys, los, std::min<std::size_t>(config.samples, 1000), config.seed);
        check("gain.deterministic", fit.max_deviation_from_nu <= 1e-9 * std::max(1.0, stats.nu),
              "max |gain - nu| = " + fmt(fit.max_deviation_from_nu));
        skip("gain.rice_ks", fit.note);
    }

    const ScatterMomentReport moments = validate_scatter_moments(sys, los, config.samples, config.seed);
    for (const MomentCheck& c : moments.checks) {
        check("moments." + c.name, c.passed,
              "measured = " + fmt(c.measured) + ", expected = " + fmt(c.expected) +
                  ", relative error = " + fmt(c.relative_error) + " (tol " + fmt(c.tolerance) + ")");
    }
    return report;
}

}  // namespace rismiso
