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

#include <numbers>

#include "rismiso/linalg.hpp"
#include "rismiso/random.hpp"

namespace rismiso {

/// Scenario parameters for the RIS-aided MISO link. Default values are the
/// reference setting: M = 4, N = 32, K = 5, theta_DD = 0, theta_DI1 = pi/4,
/// theta_DI2 = 8 pi/5, gamma = 0 dB, mu = 5 dB.
///
/// K = +inf is accepted and means LoS-only propagation (kappa_n = 0).
struct SystemConfig {
    int M = 4;  ///< transmit antennas
    int N = 32;  ///< RIS elements
    double K = 5.0;  ///< Rician factor, linear
    double theta_dd = 0.0;  ///< direct-link departure angle
    double theta_di1 = std::numbers::pi / 4.0;  ///< transmitter -> RIS departure angle
    double theta_di2 = 8.0 * std::numbers::pi / 5.0;  ///< RIS -> receiver departure angle
    double theta_ai1 = 0.0;  ///< arrival angle at the RIS
    double gamma = 1.0;  ///< indirect-link SNR scale, linear
    double mu = 3.1622776601683795;  ///< direct/indirect amplitude ratio, 10^(5/10)

    /// Throws InvalidParameter naming the first offending field.
    void validate() const;
};

/// LoS / scatter amplitude weights of the Rician model.
struct RicianCoefficients {
    double kappa_l = 0.0;
    double kappa_n = 1.0;
};

/// Deterministic LoS geometry. E = diag(h_bar) * H_bar is the cascade seen by
/// the transmit beamformer through the RIS.
struct LosComponents {
    CVector g_bar;  ///< length M
    CMatrix H_bar;  ///< N x M
    CVector h_bar;  ///< length N
    CMatrix E;  ///< N x M

    int M() const { return static_cast<int>(g_bar.size()); }
    int N() const { return static_cast<int>(h_bar.size()); }

    /// Row 0 of E. Every other row is this one times a unit-modulus scalar.
    CRowVector cascade_row() const { return E.row(0); }
};

/// One fading draw.
struct ChannelRealization {
    CVector g;  ///< length M
    CMatrix H;  ///< N x M
    CVector h;  ///< length N
};

struct LinkBudget {
    double gamma = 1.0;
    double mu = 1.0;
};

/// kappa_l = sqrt(K/(1+K)), kappa_n = sqrt(1/(1+K)). Throws InvalidParameter
/// for negative or NaN K; K = +inf yields (1, 0).
RicianCoefficients rician_coefficients(double K);

LosComponents build_los(const SystemConfig& config);

/// g = kappa_l g_bar + kappa_n g_tilde, and likewise for H and h, with
/// CN(0, 1) scatter entries. Draw order: g_tilde, H_tilde (row by row), h_tilde.
ChannelRealization sample_channel(const LosComponents& los, const RicianCoefficients& kappa,
                                  RandomStream& stream);

/// 10^(x/10) applied to both quantities.
LinkBudget link_budget_from_db(double gamma_db, double mu_db);

}  // namespace rismiso
