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

#include "rismiso/beamforming.hpp"
#include "rismiso/channel.hpp"

namespace rismiso {

/// Parameters of the effective gain |xi_1 + mu xi_2| under the proposed
/// beamformer. The complex gain is modeled as CN(m, sigma^2), so the gain is
/// Rice-distributed with noncentrality nu = |m| and per-component scale
/// sigma / sqrt(2).
struct RiceGainStats {
    double nu = 0.0;
    double sigma = 0.0;
    double mean_phase = 0.0;  ///< arg(m)

    double scale() const;  ///< sigma / sqrt(2)
};

struct QuadratureSpec {
    double relative_tolerance = 1e-8;
    double truncation_cutoff = 1e-12;  ///< drop the tail where Q_1 falls below this
    int max_subdivisions = 200;

    void validate() const;
};

/// nu = N kl^2 |e0 f| + mu kl |g_bar^T f|,
/// sigma^2 = N kn^2 (1 + kl^2 |e0 f|^2) + mu^2 kn^2.
/// sigma is 0 for LoS-only links. Throws DegenerateStats when both
/// |e0 f| and |g_bar^T f| vanish.
RiceGainStats rice_gain_stats(const BeamformerSolution& solution, const SystemConfig& config,
                              const LosComponents& los);

/// CDF of Rice(nu, scale) at x: 1 - Q_1(nu/scale, x/scale).
double rice_cdf(double x, double nu, double scale);

/// P[SNR <= beta] = P[gain <= sqrt(beta/gamma)] under the Rice model.
/// Throws DegenerateStats for sigma <= 0 and InvalidParameter for beta < 0
/// or gamma <= 0.
double outage_analytical(double beta, const RiceGainStats& stats, double gamma);

/// E[log2(1 + gamma gain^2)] in bits per channel use, from
///   (1/ln 2) int_0^inf Q_1(nu/s, sqrt(u/gamma)/s) / (1 + u) du,  s = sigma/sqrt(2).
/// Evaluated in the amplitude variable x = sqrt(u/gamma)/s with the upper
/// limit placed where Q_1 drops below quad.truncation_cutoff. Throws
/// IntegrationError when the tolerance is missed.
double ergodic_capacity_analytical(const RiceGainStats& stats, double gamma,
                                   const QuadratureSpec& quad = {});

}  // namespace rismiso
