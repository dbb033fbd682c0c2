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

// Generators for property tests.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "rismiso/channel.hpp"
#include "rismiso/linalg.hpp"

namespace rismiso::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double angle() { return uniform(0.0, 2.0 * std::numbers::pi); }

    cdouble complex_gaussian() {
        std::normal_distribution<double> n(0.0, std::sqrt(0.5));
        return {n(rng_), n(rng_)};
    }

    CVector unit_vector(int size) {
        CVector v(size);
        for (auto& x : v) x = complex_gaussian();
        return v / v.norm();
    }

    CVector unit_modulus(int size) {
        CVector v(size);
        for (auto& x : v) x = std::polar(1.0, angle());
        return v;
    }

    // Random but valid system: K in [0.05, 50] on a log scale, mu in [-20, 20] dB.
    SystemConfig system(int max_m = 8, int max_n = 64) {
        SystemConfig c;
        c.M = integer(1, max_m);
        c.N = integer(1, max_n);
        c.K = std::pow(10.0, uniform(std::log10(0.05), std::log10(50.0)));
        c.theta_dd = angle();
        c.theta_di1 = angle();
        c.theta_di2 = angle();
        c.theta_ai1 = angle();
        c.gamma = std::pow(10.0, uniform(-1.0, 1.0));
        c.mu = std::pow(10.0, uniform(-1.0, 1.0));
        return c;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace rismiso::testing
