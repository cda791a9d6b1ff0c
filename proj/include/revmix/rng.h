// Copyright 2026 The revmix Authors.
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

#ifndef REVMIX_RNG_H
#define REVMIX_RNG_H

#include <cstdint>
#include <random>

namespace revmix {

/// SplitMix64 finalizer. Used to derive independent streams from (seed, counter).
constexpr uint64_t mix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of stream `counter` under master seed `seed`. Pure, so trials can run in any order.
constexpr uint64_t derive_seed(uint64_t seed, uint64_t counter) {
    return mix64(mix64(seed) ^ mix64(counter ^ 0xD1B54A32D192ED03ULL));
}

/// Deterministic generator. The engine output is fixed by the standard; bounded
/// draws use our own rejection loop because std distributions differ across
/// standard libraries.
class Rng {
   public:
    explicit Rng(uint64_t seed) : engine_(seed) {
    }

    uint64_t next() {
        return engine_();
    }

    /// Uniform in [0, bound). bound must be positive.
    uint64_t uniform(uint64_t bound) {
        uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        while (true) {
            uint64_t r = engine_();
            if (r < limit) {
                return r % bound;
            }
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform_real() {
        return (engine_() >> 11) * 0x1.0p-53;
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace revmix

#endif
