// Copyright 2026 The cewlab Authors
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

#ifndef CEWLAB_RNG_H
#define CEWLAB_RNG_H

#include <array>
#include <complex>
#include <cstdint>

namespace cewlab {

/// Seeded xoshiro256** generator. Each (seed, stream) pair selects an
/// independent sequence, so sample i of a dataset can be drawn from stream i
/// regardless of evaluation order. All derived distributions are implemented
/// here rather than through <random> so sequences are identical across
/// standard libraries.
class Rng {
   public:
    Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1]; safe as a logarithm argument.
    double uniform_positive();
    /// Uniform integer in [0, bound), unbiased. bound must be > 0.
    std::uint64_t below(std::uint64_t bound);
    /// Standard normal via Box-Muller.
    double normal();
    /// Standard complex normal: real and imaginary parts i.i.d. N(0, 1/2).
    std::complex<double> complex_normal();
    /// Exponential with unit rate.
    double exponential();

   private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::array<std::uint64_t, 4> state_{};
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace cewlab

#endif  // CEWLAB_RNG_H
