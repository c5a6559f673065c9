// Copyright 2026 The envwalk Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Seeded random streams.
 *
 * Every stream is a std::mt19937_64 engine whose seed is derived with the
 * SplitMix64 finalizer, so sample k of a run is reproducible from the pair
 * (base_seed, k) alone. Real variates are built from the raw 64-bit output
 * (top 53 bits) rather than through std::uniform_real_distribution, whose
 * algorithm is implementation-defined.
 */
#pragma once

#include <cstdint>
#include <random>

namespace envwalk {

/// SplitMix64 output function applied to x.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

/// Seed of stream `index` under `base_seed`.
constexpr std::uint64_t derive_stream_seed(std::uint64_t base_seed,
                                           std::uint64_t index) noexcept {
    return splitmix64(splitmix64(base_seed) ^ splitmix64(~index));
}

class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    static RngStream for_sample(std::uint64_t base_seed, std::uint64_t index) {
        return RngStream(derive_stream_seed(base_seed, index));
    }

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11U) * 0x1.0p-53;
    }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace envwalk
