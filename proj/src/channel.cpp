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

#include "rismiso/channel.hpp"

#include <cmath>
#include <string>

#include "rismiso/error.hpp"

namespace rismiso {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw InvalidParameter(message);
}

cdouble unit_phasor(double phase) { return std::polar(1.0, phase); }

}  // namespace

void SystemConfig::validate() const {
    require(M >= 1, "M must be at least 1 (got " + std::to_string(M) + ")");
    require(N >= 1, "N must be at least 1 (got " + std::to_string(N) + ")");
    require(!std::isnan(K) && K >= 0.0, "K must be nonnegative");
    require(std::isfinite(theta_dd), "theta_dd must be finite");
    require(std::isfinite(theta_di1), "theta_di1 must be finite");
    require(std::isfinite(theta_di2), "theta_di2 must be finite");
    require(std::isfinite(theta_ai1), "theta_ai1 must be finite");
    require(std::isfinite(gamma) && gamma > 0.0, "gamma must be positive and finite");
    require(std::isfinite(mu) && mu >= 0.0, "mu must be nonnegative and finite");
}

RicianCoefficients rician_coefficients(double K) {
    if (std::isnan(K) || K < 0.0) throw InvalidParameter("Rician K must be nonnegative");
    if (std::isinf(K)) return {1.0, 0.0};
    return {std::sqrt(K / (1.0 + K)), std::sqrt(1.0 / (1.0 + K))};
}

LosComponents build_los(const SystemConfig& config) {
    config.validate();
    const int M = config.M;
    const int N = config.N;

    LosComponents los;
    los.g_bar.resize(M);
    for (int m = 0; m < M; ++m) los.g_bar[m] = unit_phasor(m * config.theta_dd);

    los.H_bar.resize(N, M);
    for (int n = 0; n < N; ++n)
        for (int m = 0; m < M; ++m)
            los.H_bar(n, m) = unit_phasor(n * config.theta_ai1 - m * config.theta_di1);

    // h_bar carries a Hermitian transpose, hence the negative phase.
    los.h_bar.resize(N);
    for (int n = 0; n < N; ++n) los.h_bar[n] = unit_phasor(-n * config.theta_di2);

    los.E = los.h_bar.asDiagonal() * los.H_bar;
    return los;
}

ChannelRealization sample_channel(const LosComponents& los, const RicianCoefficients& kappa,
                                  RandomStream& stream) {
    const Eigen::Index M = los.g_bar.size();
    const Eigen::Index N = los.h_bar.size();

    ChannelRealization r;
    r.g.resize(M);
    r.H.resize(N, M);
    r.h.resize(N);

    for (Eigen::Index m = 0; m < M; ++m)
        r.g[m] = kappa.kappa_l * los.g_bar[m] + kappa.kappa_n * stream.complex_normal();
    for (Eigen::Index n = 0; n < N; ++n)
        for (Eigen::Index m = 0; m < M; ++m)
            r.H(n, m) = kappa.kappa_l * los.H_bar(n, m) + kappa.kappa_n * stream.complex_normal();
    for (Eigen::Index n = 0; n < N; ++n)
        r.h[n] = kappa.kappa_l * los.h_bar[n] + kappa.kappa_n * stream.complex_normal();
    return r;
}

LinkBudget link_budget_from_db(double gamma_db, double mu_db) {
    return {std::pow(10.0, gamma_db / 10.0), std::pow(10.0, mu_db / 10.0)};
}

}  // namespace rismiso
