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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rismiso/analysis.hpp"
#include "rismiso/beamforming.hpp"
#include "rismiso/channel.hpp"

namespace rismiso {

/// Streaming mean / variance (Welford), mergeable with Chan's update.
struct RunningMoments {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x);
    void merge(const RunningMoments& other);
    double variance() const;  ///< unbiased sample variance
    double standard_error() const;
};

struct SimulationPlan {
    std::size_t n_samples = 100000;
    std::uint64_t seed = 1;
    std::vector<double> beta_grid_db;  ///< strictly increasing
    std::vector<Scheme> schemes{Scheme::Proposed, Scheme::MaxMeanSnr, Scheme::MaxSnr};
    unsigned workers = 0;  ///< 0 = hardware concurrency
    AlternatingOptions max_snr_options{50, 1e-8};
    AlternatingOptions max_mean_options{200, 1e-8};

    void validate() const;
};

struct SchemeEstimate {
    Scheme scheme = Scheme::Proposed;
    std::vector<double> outage;  ///< P[SNR <= beta] per grid point
    std::vector<double> outage_se;  ///< sqrt(p (1 - p) / n)
    double capacity = 0.0;  ///< mean log2(1 + SNR)
    double capacity_se = 0.0;
    double mean_snr = 0.0;
    double mean_snr_se = 0.0;
    std::size_t optimizer_nonconverged = 0;  ///< MaxSnr samples that hit the iteration cap
};

struct EmpiricalResult {
    std::vector<double> beta_grid_db;
    std::vector<SchemeEstimate> estimates;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    /// Samples where the MaxSnr SNR fell below the Proposed SNR (only
    /// counted when both schemes run).
    std::size_t max_snr_below_proposed = 0;

    bool has(Scheme scheme) const;
    const SchemeEstimate& at(Scheme scheme) const;
};

/// Monte Carlo outage / capacity for the requested schemes. Sample i draws
/// its channel from RandomStream(seed, i); samples are processed in fixed
/// blocks whose partial results are merged in block order, so the result is
/// bit-identical for any worker count.
EmpiricalResult simulate(const SimulationPlan& plan, const SystemConfig& config,
                         const LosComponents& los);

/// Kolmogorov-Smirnov comparison of sampled |xi_1 + mu xi_2| under the
/// proposed beamformer against Rice(nu, sigma/sqrt 2).
struct GainFitReport {
    std::size_t n_samples = 0;
    RiceGainStats stats;
    double ks_statistic = 0.0;
    double critical_value = 0.0;  ///< asymptotic, at the requested significance
    double p_value = 1.0;
    bool passed = false;
    bool skipped = false;  ///< degenerate Rice (sigma = 0): KS not applicable
    double max_deviation_from_nu = 0.0;  ///< only filled when skipped
    std::string note;
};

GainFitReport validate_gain_distribution(const SystemConfig& config, const LosComponents& los,
                                         std::size_t n_samples, std::uint64_t seed,
                                         double significance = 0.01);

struct MomentCheck {
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double relative_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Empirical variances of the scatter terms a2, a3, a4, b2 of the gain
/// decomposition, plus the deterministic a1 and ||H_bar f||^2 identities.
struct ScatterMomentReport {
    std::size_t n_samples = 0;
    std::vector<MomentCheck> checks;
    bool passed() const;
};

ScatterMomentReport validate_scatter_moments(const SystemConfig& config, const LosComponents& los,
                                             std::size_t n_samples, std::uint64_t seed,
                                             double relative_tolerance = 0.05);

/// sqrt(-ln(alpha/2) / 2) / sqrt(n).
double ks_critical_value(std::size_t n, double significance);

/// Asymptotic Kolmogorov tail P[sqrt(n) D > lambda].
double kolmogorov_tail(double lambda);

}  // namespace rismiso
