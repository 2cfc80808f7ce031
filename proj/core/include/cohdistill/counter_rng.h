// Copyright 2026 The cohdistill Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COHDISTILL_COUNTER_RNG_H
#define COHDISTILL_COUNTER_RNG_H

#include <cstdint>

namespace cohdistill {

/// Counter-based generator: draw number `i` is a pure function of (seed, i).
///
/// The mixing function is the SplitMix64 finalizer applied to
/// `seed + (i + 1) * golden_gamma`, i.e. draw `i` equals the i-th output of a
/// sequential SplitMix64 stream seeded with `seed`. Because no state is
/// carried between draws, any partition of a draw range across workers
/// reproduces the sequential result bit for bit.
class CounterRng {
   public:
    explicit constexpr CounterRng(uint64_t seed) : seed_(seed) {
    }

    constexpr uint64_t seed() const {
        return seed_;
    }

    constexpr uint64_t bits(uint64_t counter) const {
        return mix(seed_ + (counter + 1) * kGamma);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform(uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    /// Independent generator for a numbered sub-task (restart, worker, ...).
    constexpr CounterRng substream(uint64_t stream) const {
        return CounterRng(mix(seed_ ^ mix(stream + kGamma)));
    }

   private:
    static constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    static constexpr uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    uint64_t seed_;
};

}  // namespace cohdistill

#endif
