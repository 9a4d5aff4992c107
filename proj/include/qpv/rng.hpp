// Copyright 2026 The qpv-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>

namespace qpv {

/**
 * SplitMix64 (Steele, Lea & Flood, "Fast splittable pseudorandom number
 * generators", OOPSLA 2014): a 64-bit Weyl sequence followed by an avalanche
 * mix. Counter-based, so streams are bit-reproducible across platforms and
 * trivially splittable into independent child streams.
 *
 * This is the only random source in the library. std::* distributions are
 * never used because their outputs are implementation-defined.
 */
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    /// The SplitMix64 avalanche finalizer.
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next() {
        return mix(state_ += 0x9E3779B97F4A7C15ULL);
    }

    /// Uniform in [0,1) with 53-bit resolution.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform in {0, ..., n-1}, unbiased via rejection. n must be >= 1.
    std::uint64_t next_below(std::uint64_t n) {
        if (n <= 1) {
            return 0;
        }
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r = next();
        while (r >= limit) {
            r = next();
        }
        return r % n;
    }

    /// Standard normal via Box-Muller; consumes two uniforms per pair.
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - next_double();  // (0,1], keeps log finite
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * M_PI * u2;
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

  private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/**
 * Derived seed for chunk c of a run seeded with `seed`. The chunk policy
 * (not thread scheduling) defines the stream: chunk c always consumes the
 * stream seeded with child_seed(seed, c).
 */
inline std::uint64_t child_seed(std::uint64_t seed, std::uint64_t chunk) {
    return SplitMix64::mix(seed ^ (0x9E3779B97F4A7C15ULL * (chunk + 1)));
}

}  // namespace qpv
