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

#include <array>
#include <complex>
#include <cstdint>

namespace rismiso {

/// Philox4x32-10 block function (Salmon et al., SC'11). Maps a 128-bit
/// counter and a 64-bit key to 128 pseudorandom bits.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

/// Counter-based random stream. The pair (seed, stream_id) fully determines
/// the sequence, so stream i of a Monte Carlo run can be regenerated in any
/// order and on any worker.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() noexcept;

    /// Circularly-symmetric complex Gaussian with E|z|^2 = 1
    /// (real and imaginary parts each of variance 1/2).
    std::complex<double> complex_normal() noexcept;

    /// Real standard normal.
    double normal() noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

private:
    void refill() noexcept;

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    PhiloxCounter buffer_{};
    int used_ = 4;
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

}  // namespace rismiso
