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

#include "rismiso/random.hpp"

#include <cmath>
#include <numbers>

namespace rismiso {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

inline std::uint32_t low32(std::uint64_t v) noexcept { return static_cast<std::uint32_t>(v); }
inline std::uint32_t high32(std::uint64_t v) noexcept { return static_cast<std::uint32_t>(v >> 32); }

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return ctr;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed), stream_id_(stream_id) {}

void RandomStream::refill() noexcept {
    const PhiloxCounter counter{low32(block_), high32(block_), low32(stream_id_), high32(stream_id_)};
    buffer_ = philox4x32_10(counter, {low32(seed_), high32(seed_)});
    ++block_;
    used_ = 0;
}

double RandomStream::uniform() noexcept {
    if (used_ > 2) refill();
    const std::uint64_t bits =
        (static_cast<std::uint64_t>(buffer_[used_]) << 32) | buffer_[used_ + 1];
    used_ += 2;
    // Top 53 bits, shifted by half an ulp so 0 is never returned.
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

std::complex<double> RandomStream::complex_normal() noexcept {
    const double radius = std::sqrt(-std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

double RandomStream::normal() noexcept {
    if (has_spare_normal_) {
        has_spare_normal_ = false;
        return spare_normal_;
    }
    const std::complex<double> z = complex_normal() * std::numbers::sqrt2;
    spare_normal_ = z.imag();
    has_spare_normal_ = true;
    return z.real();
}

}  // namespace rismiso
