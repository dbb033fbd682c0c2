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

#include <array>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rismiso/quadrature.hpp"

using namespace rismiso;

TEST_CASE("Kronrod rule is exact for degree 22") {
    auto p = [](double x) { return std::pow(x, 22) - 3.0 * std::pow(x, 7) + 1.0; };
    const QuadratureResult r = gauss_kronrod_15(p, -1.0, 2.0);
    const double want = (std::pow(2.0, 23) + 1.0) / 23.0 - 3.0 * (std::pow(2.0, 8) - 1.0) / 8.0 + 3.0;
    CHECK(std::abs(r.value - want) <= 1e-12 * want);
}

TEST_CASE("adaptive integration") {
    using std::numbers::pi;
    QuadratureResult r = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, pi, 1e-12, 100);
    CHECK(r.converged);
    CHECK(std::abs(r.value - 2.0) < 1e-12);

    r = integrate_adaptive([](double x) { return std::exp(-x * x); }, -10.0, 10.0, 1e-12, 100);
    CHECK(std::abs(r.value - std::sqrt(pi)) < 1e-12);

    const std::array<double, 1> kink{0.3};
    r = integrate_adaptive([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, 1e-13, 50, kink);
    CHECK(r.converged);
    CHECK(std::abs(r.value - (0.045 + 0.245)) < 1e-14);

    // Integrable singularity: needs many bisections.
    r = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10, 500);
    CHECK(std::abs(r.value - 2.0) < 1e-8);

    r = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-14, 2);
    CHECK_FALSE(r.converged);
    CHECK(r.abs_error > 0.0);

    r = integrate_adaptive([](double) { return 0.0; }, 0.0, 1.0, 1e-10, 10, {}, 1e-300);
    CHECK(r.converged);
    CHECK(r.value == 0.0);
}
