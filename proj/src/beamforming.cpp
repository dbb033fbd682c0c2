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

#include "rismiso/beamforming.hpp"

#include <cmath>
#include <string>

#include "rismiso/error.hpp"

namespace rismiso {

namespace {

constexpr double kDegenerateThreshold = 1e-12;

// x^T y without conjugation.
cdouble bilinear(const CVector& x, const CVector& y) { return x.cwiseProduct(y).sum(); }

void check_beamformer_dims(const CVector& f, const CVector& psi, Eigen::Index M, Eigen::Index N,
                           const char* who) {
    if (f.size() != M || psi.size() != N) {
        throw DimensionMismatch(std::string(who) + ": expected f of length " + std::to_string(M) +
                                " and psi of length " + std::to_string(N));
    }
}

// Relative improvement that works for a zero starting objective.
double relative_gain(double previous, double current) {
    const double denom = std::abs(previous) > 0.0 ? std::abs(previous) : 1.0;
    return (current - previous) / denom;
}

}  // namespace

std::string_view scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::Proposed: return "proposed";
        case Scheme::MaxMeanSnr: return "maxmean";
        case Scheme::MaxSnr: return "maxsnr";
    }
    return "unknown";
}

ObjectiveWeights compute_weights(const SystemConfig& config) {
    const auto [kl, kn] = rician_coefficients(config.K);
    const double N = config.N;
    const double kl2 = kl * kl;
    return {N * N * kl2 * kl2 + N * kl2 * kn * kn, config.mu * config.mu * kl2,
            2.0 * N * config.mu * kl2 * kl};
}

QuadraticForm build_quadratic_form(const LosComponents& los, const ObjectiveWeights& weights) {
    const CVector e0h = los.cascade_row().adjoint();
    const CVector g_conj = los.g_bar.conjugate();
    CMatrix Z = weights.w1 * (e0h * e0h.adjoint()) + weights.w2 * (g_conj * g_conj.adjoint());
    return {0.5 * (Z + Z.adjoint())};
}

CVector phase_shift_for(const CVector& f, const LosComponents& los) {
    if (f.size() != los.E.cols()) throw DimensionMismatch("phase_shift_for: f has the wrong length");
    const CVector Ef = los.E * f;
    const double Ef_norm2 = Ef.squaredNorm();
    if (std::sqrt(Ef_norm2) <= kDegenerateThreshold)
        throw DegenerateBeam("phase_shift_for: E f vanishes, the RIS path carries no signal");

    const cdouble gf = bilinear(los.g_bar, f);
    CVector psi(Ef.size());
    if (std::abs(gf) <= kDegenerateThreshold) {
        for (Eigen::Index k = 0; k < Ef.size(); ++k) psi[k] = std::polar(1.0, -std::arg(Ef[k]));
        return psi;
    }
    const double N = static_cast<double>(Ef.size());
    const cdouble c = N * std::abs(Ef[0]) / std::abs(gf) * gf / Ef_norm2;
    psi = c * Ef.conjugate();
    return psi;
}

BeamformerSolution design_proposed(const SystemConfig& config, const LosComponents& los) {
    config.validate();
    if (!(config.K > 0.0))
        throw InvalidParameter("the proposed scheme requires a LoS component (K > 0)");
    const QuadraticForm form = build_quadratic_form(los, compute_weights(config));
    BeamformerSolution solution;
    solution.f = principal_eigenvector(form.Z);
    solution.psi = phase_shift_for(solution.f, los);
    solution.scheme = Scheme::Proposed;
    return solution;
}

BeamformerSolution design_proposed(const SystemConfig& config) {
    return design_proposed(config, build_los(config));
}

double mean_snr_exact(const CVector& f, const CVector& psi, const SystemConfig& config,
                      const LosComponents& los) {
    check_beamformer_dims(f, psi, los.H_bar.cols(), los.H_bar.rows(), "mean_snr_exact");
    const auto [kl, kn] = rician_coefficients(config.K);
    const double N = static_cast<double>(los.N());
    const double mu = config.mu;

    const CVector Hf = los.H_bar * f;
    const cdouble ris = los.h_bar.cwiseProduct(psi).cwiseProduct(Hf).sum();
    const cdouble coherent = kl * kl * ris + mu * kl * bilinear(los.g_bar, f);
    const double kl2 = kl * kl;
    const double kn2 = kn * kn;
    return config.gamma * (std::norm(coherent) + kl2 * kn2 * Hf.squaredNorm() +
                           (kl2 * kn2 + kn2 * kn2) * N + mu * mu * kn2);
}

double lower_bound_mean_snr(const CVector& f, const SystemConfig& config, const LosComponents& los) {
    if (f.size() != los.E.cols()) throw DimensionMismatch("lower_bound_mean_snr: f has the wrong length");
    const auto [kl, kn] = rician_coefficients(config.K);
    const QuadraticForm form = build_quadratic_form(los, compute_weights(config));
    const double quad = f.dot(form.Z * f).real();
    const double kl2 = kl * kl;
    const double kn2 = kn * kn;
    return config.gamma *
           (quad + (kl2 * kn2 + kn2 * kn2) * los.N() + config.mu * config.mu * kn2);
}

AlternatingResult design_max_mean_snr(const SystemConfig& config, const LosComponents& los,
                                      const BeamformerSolution& init,
                                      const AlternatingOptions& options) {
    check_beamformer_dims(init.f, init.psi, los.E.cols(), los.E.rows(), "design_max_mean_snr");
    const auto [kl, kn] = rician_coefficients(config.K);

    AlternatingResult result;
    result.solution = {init.f, init.psi, Scheme::MaxMeanSnr};
    double best = mean_snr_exact(init.f, init.psi, config, los);
    result.trace.push_back(best);

    // With no LoS the objective does not depend on (f, psi).
    if (kl == 0.0) {
        result.converged = true;
        return result;
    }

    const CMatrix scatter = kl * kl * kn * kn * (los.H_bar.adjoint() * los.H_bar);
    CVector f = init.f;
    CVector psi(los.N());
    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        const CVector Ef = los.E * f;
        const double reference = std::arg(bilinear(los.g_bar, f));
        for (Eigen::Index k = 0; k < Ef.size(); ++k)
            psi[k] = std::polar(1.0, reference - std::arg(Ef[k]));

        // v^H = kl^2 psi^T E + mu kl g_bar^T
        const CRowVector v_h =
            kl * kl * (psi.transpose() * los.E) + config.mu * kl * los.g_bar.transpose();
        CMatrix A = v_h.adjoint() * v_h + scatter;
        A = 0.5 * (A + A.adjoint()).eval();
        f = principal_eigenvector(A);

        const double value = mean_snr_exact(f, psi, config, los);
        result.iterations = iter;
        result.trace.push_back(value);
        const double gain = relative_gain(best, value);
        if (value > best) {
            best = value;
            result.solution.f = f;
            result.solution.psi = psi;
        }
        if (gain < options.tolerance) {
            result.converged = true;
            break;
        }
    }
    return result;
}

AlternatingResult design_max_snr(const ChannelRealization& realization, const SystemConfig& config,
                                 const BeamformerSolution& init, const AlternatingOptions& options) {
    const CMatrix& H = realization.H;
    check_beamformer_dims(init.f, init.psi, H.cols(), H.rows(), "design_max_snr");
    const double mu = config.mu;

    AlternatingResult result;
    result.solution = {init.f, init.psi, Scheme::MaxSnr};
    double best = instantaneous_snr(init.f, init.psi, realization, config);
    result.trace.push_back(best);

    CVector f = init.f;
    CVector psi(H.rows());
    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        const CVector cascade = realization.h.cwiseProduct(H * f);
        const double reference = std::arg(mu * bilinear(realization.g, f));
        for (Eigen::Index k = 0; k < cascade.size(); ++k)
            psi[k] = std::polar(1.0, reference - std::arg(cascade[k]));

        // Effective row channel h^T diag(psi) H + mu g^T, matched by f.
        const CRowVector row =
            realization.h.cwiseProduct(psi).transpose() * H + mu * realization.g.transpose();
        const double row_norm = row.norm();
        if (row_norm > 0.0) f = row.adjoint() / row_norm;

        const double value = instantaneous_snr(f, psi, realization, config);
        result.iterations = iter;
        result.trace.push_back(value);
        const double gain = relative_gain(best, value);
        if (value > best) {
            best = value;
            result.solution.f = f;
            result.solution.psi = psi;
        }
        if (gain < options.tolerance) {
            result.converged = true;
            break;
        }
    }
    return result;
}

double instantaneous_snr(const CVector& f, const CVector& psi, const ChannelRealization& realization,
                         const SystemConfig& config) {
    check_beamformer_dims(f, psi, realization.H.cols(), realization.H.rows(), "instantaneous_snr");
    if (realization.g.size() != f.size() || realization.h.size() != psi.size())
        throw DimensionMismatch("instantaneous_snr: realization dimensions are inconsistent");
    const cdouble ris = realization.h.cwiseProduct(psi).cwiseProduct(realization.H * f).sum();
    const cdouble total = ris + config.mu * bilinear(realization.g, f);
    return config.gamma * std::norm(total);
}

}  // namespace rismiso
