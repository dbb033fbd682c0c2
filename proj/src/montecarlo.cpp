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

#include "rismiso/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "rismiso/error.hpp"
#include "rismiso/random.hpp"

namespace rismiso {

namespace {

constexpr std::size_t kBlockSize = 1024;

struct SchemeAccumulator {
    std::vector<std::uint64_t> below;  // samples with SNR <= beta, per grid point
    RunningMoments capacity;
    RunningMoments snr;
    std::size_t nonconverged = 0;
};

struct BlockAccumulator {
    std::vector<SchemeAccumulator> schemes;
    std::size_t max_snr_below_proposed = 0;
};

int index_of(const std::vector<Scheme>& schemes, Scheme s) {
    const auto it = std::find(schemes.begin(), schemes.end(), s);
    return it == schemes.end() ? -1 : static_cast<int>(it - schemes.begin());
}

}  // namespace

void RunningMoments::add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
}

void RunningMoments::merge(const RunningMoments& other) {
    if (other.count == 0) return;
    if (count == 0) {
        *this = other;
        return;
    }
    const double n_a = static_cast<double>(count);
    const double n_b = static_cast<double>(other.count);
    const double n = n_a + n_b;
    const double delta = other.mean - mean;
    mean += delta * n_b / n;
    m2 += other.m2 + delta * delta * n_a * n_b / n;
    count += other.count;
}

double RunningMoments::variance() const {
    return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
}

double RunningMoments::standard_error() const {
    return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
}

void SimulationPlan::validate() const {
    if (n_samples < 1) throw InvalidParameter("n_samples must be at least 1");
    for (std::size_t i = 1; i < beta_grid_db.size(); ++i) {
        if (!(beta_grid_db[i] > beta_grid_db[i - 1]))
            throw InvalidParameter("beta grid must be strictly increasing");
    }
    if (schemes.empty()) throw InvalidParameter("at least one scheme must be simulated");
}

bool EmpiricalResult::has(Scheme scheme) const {
    return std::any_of(estimates.begin(), estimates.end(),
                       [&](const SchemeEstimate& e) { return e.scheme == scheme; });
}

const SchemeEstimate& EmpiricalResult::at(Scheme scheme) const {
    for (const auto& e : estimates)
        if (e.scheme == scheme) return e;
    throw InvalidParameter("scheme " + std::string(scheme_name(scheme)) + " was not simulated");
}

EmpiricalResult simulate(const SimulationPlan& plan, const SystemConfig& config,
                         const LosComponents& los) {
    plan.validate();
    config.validate();
    const RicianCoefficients kappa = rician_coefficients(config.K);

    const std::vector<Scheme>& schemes = plan.schemes;
    const int proposed_slot = index_of(schemes, Scheme::Proposed);
    const int max_snr_slot = index_of(schemes, Scheme::MaxSnr);

    // Statistical schemes are designed once; MaxSnr starts every realization
    // from the proposed solution.
    const BeamformerSolution proposed = design_proposed(config, los);
    std::vector<BeamformerSolution> fixed(schemes.size());
    for (std::size_t s = 0; s < schemes.size(); ++s) {
        if (schemes[s] == Scheme::Proposed) fixed[s] = proposed;
        if (schemes[s] == Scheme::MaxMeanSnr)
            fixed[s] = design_max_mean_snr(config, los, proposed, plan.max_mean_options).solution;
    }

    std::vector<double> thresholds;
    for (double db : plan.beta_grid_db) thresholds.push_back(std::pow(10.0, db / 10.0));

    const std::size_t n_blocks = (plan.n_samples + kBlockSize - 1) / kBlockSize;
    std::vector<BlockAccumulator> blocks(n_blocks);

    auto run_block = [&](std::size_t block) {
        BlockAccumulator acc;
        acc.schemes.resize(schemes.size());
        for (auto& s : acc.schemes) s.below.assign(thresholds.size(), 0);

        const std::size_t first = block * kBlockSize;
        const std::size_t last = std::min(plan.n_samples, first + kBlockSize);
        std::vector<double> snr(schemes.size());
        for (std::size_t i = first; i < last; ++i) {
            RandomStream stream(plan.seed, i);
            const ChannelRealization r = sample_channel(los, kappa, stream);
            for (std::size_t s = 0; s < schemes.size(); ++s) {
                if (schemes[s] == Scheme::MaxSnr) {
                    const AlternatingResult opt =
                        design_max_snr(r, config, proposed, plan.max_snr_options);
                    snr[s] = instantaneous_snr(opt.solution.f, opt.solution.psi, r, config);
                    if (!opt.converged) ++acc.schemes[s].nonconverged;
                } else {
                    snr[s] = instantaneous_snr(fixed[s].f, fixed[s].psi, r, config);
                }
                SchemeAccumulator& sa = acc.schemes[s];
                for (std::size_t b = 0; b < thresholds.size(); ++b)
                    if (snr[s] <= thresholds[b]) ++sa.below[b];
                sa.capacity.add(std::log2(1.0 + snr[s]));
                sa.snr.add(snr[s]);
            }
            if (proposed_slot >= 0 && max_snr_slot >= 0 && snr[max_snr_slot] < snr[proposed_slot])
                ++acc.max_snr_below_proposed;
        }
        blocks[block] = std::move(acc);
    };

    unsigned workers = plan.workers != 0 ? plan.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_blocks));
    if (workers <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::atomic<bool> failed{false};
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w) {
                pool.emplace_back([&] {
                    for (std::size_t b = next++; b < n_blocks && !failed; b = next++) {
                        try {
                            run_block(b);
                        } catch (...) {
                            if (!failed.exchange(true)) failure = std::current_exception();
                        }
                    }
                });
            }
        }
        if (failure) std::rethrow_exception(failure);
    }

    // Ordered reduction.
    std::vector<SchemeAccumulator> total(schemes.size());
    for (auto& s : total) s.below.assign(thresholds.size(), 0);
    EmpiricalResult result;
    for (const BlockAccumulator& block : blocks) {
        for (std::size_t s = 0; s < schemes.size(); ++s) {
            for (std::size_t b = 0; b < thresholds.size(); ++b) total[s].below[b] += block.schemes[s].below[b];
            total[s].capacity.merge(block.schemes[s].capacity);
            total[s].snr.merge(block.schemes[s].snr);
            total[s].nonconverged += block.schemes[s].nonconverged;
        }
        result.max_snr_below_proposed += block.max_snr_below_proposed;
    }

    const double n = static_cast<double>(plan.n_samples);
    result.beta_grid_db = plan.beta_grid_db;
    result.n_samples = plan.n_samples;
    result.seed = plan.seed;
    for (std::size_t s = 0; s < schemes.size(); ++s) {
        SchemeEstimate e;
        e.scheme = schemes[s];
        for (std::uint64_t count : total[s].below) {
            const double p = static_cast<double>(count) / n;
            e.outage.push_back(p);
            e.outage_se.push_back(std::sqrt(p * (1.0 - p) / n));
        }
        e.capacity = total[s].capacity.mean;
        e.capacity_se = total[s].capacity.standard_error();
        e.mean_snr = total[s].snr.mean;
        e.mean_snr_se = total[s].snr.standard_error();
        e.optimizer_nonconverged = total[s].nonconverged;
        result.estimates.push_back(std::move(e));
    }
    return result;
}

}  // namespace rismiso
