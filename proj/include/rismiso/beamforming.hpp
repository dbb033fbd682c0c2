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

#include <string_view>
#include <vector>

#include "rismiso/channel.hpp"
#include "rismiso/eigensolver.hpp"
#include "rismiso/linalg.hpp"

namespace rismiso {

enum class Scheme {
    Proposed,  ///< closed-form maximizer of the mean-SNR lower bound
    MaxMeanSnr,  ///< alternating maximizer of the exact mean SNR
    MaxSnr,  ///< per-realization alternating maximizer, perfect CSI
};

std::string_view scheme_name(Scheme scheme);

/// Weights of the modified objective
///   w1 |e0 f|^2 + w2 |g_bar^T f|^2 + w3 |e0 f| |g_bar^T f|.
struct ObjectiveWeights {
    double w1 = 0.0;
    double w2 = 0.0;
    double w3 = 0.0;
};

/// Z = w1 e0^H e0 + w2 conj(g_bar) g_bar^T. Hermitian PSD with rank <= 2.
struct QuadraticForm {
    CMatrix Z;
};

struct BeamformerSolution {
    CVector f;  ///< unit-norm transmit beamformer
    CVector psi;  ///< unit-modulus RIS phases
    Scheme scheme = Scheme::Proposed;
};

/// Options shared by the two alternating baselines.
struct AlternatingOptions {
    int max_iterations = 200;
    double tolerance = 1e-8;  ///< relative objective improvement
};

struct AlternatingResult {
    BeamformerSolution solution;
    std::vector<double> trace;  ///< objective of init, then of every iterate
    int iterations = 0;
    bool converged = false;
};

ObjectiveWeights compute_weights(const SystemConfig& config);

QuadraticForm build_quadratic_form(const LosComponents& los, const ObjectiveWeights& weights);

/// RIS phases that co-phase the cascade E f with g_bar^T f:
///   psi^T = (N |e0 f| / |g_bar^T f|) (g_bar^T f) (E f)^H / ||E f||^2.
/// When |g_bar^T f| <= 1e-12 the cascade is aligned to zero phase instead.
/// Throws DegenerateBeam when ||E f|| <= 1e-12.
CVector phase_shift_for(const CVector& f, const LosComponents& los);

/// Principal eigenvector of Z plus its aligned phase vector. Requires K > 0.
BeamformerSolution design_proposed(const SystemConfig& config, const LosComponents& los);
BeamformerSolution design_proposed(const SystemConfig& config);

/// Exact mean SNR of (f, psi) under the Rician model.
double mean_snr_exact(const CVector& f, const CVector& psi, const SystemConfig& config,
                      const LosComponents& los);

/// gamma (f^H Z f + (kl^2 kn^2 + kn^4) N + mu^2 kn^2).
double lower_bound_mean_snr(const CVector& f, const SystemConfig& config, const LosComponents& los);

/// Alternating ascent on the exact mean SNR, started from init. Never returns
/// a solution worse than init.
AlternatingResult design_max_mean_snr(const SystemConfig& config, const LosComponents& los,
                                      const BeamformerSolution& init,
                                      const AlternatingOptions& options = {});

/// Alternating ascent on the instantaneous SNR of one realization.
/// The returned SNR is never below that of init.
AlternatingResult design_max_snr(const ChannelRealization& realization, const SystemConfig& config,
                                 const BeamformerSolution& init,
                                 const AlternatingOptions& options = {50, 1e-8});

/// gamma |h^T diag(psi) H f + mu g^T f|^2.
double instantaneous_snr(const CVector& f, const CVector& psi, const ChannelRealization& realization,
                         const SystemConfig& config);

}  // namespace rismiso
