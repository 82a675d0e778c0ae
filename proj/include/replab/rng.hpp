// Copyright 2026 The replab Authors
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

#ifndef REPLAB_RNG_HPP
#define REPLAB_RNG_HPP

#include <cstdint>
#include <random>

#include "replab/linalg.hpp"

namespace replab {

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for stream `stream` under master seed `seed`. Distinct (seed, stream)
/// pairs give statistically independent engines.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Explicit random source handed to every sampler. Not thread-safe; parallel
/// code derives one Rng per work item with `Rng::stream`.
class Rng {
   public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    /// Independent child stream, fully determined by this generator's seed and
    /// `index` (does not advance this generator).
    Rng stream(std::uint64_t index) const { return Rng(seed_, index + 1 + stream_ * 0x9e3779b97f4a7c15ULL); }

    std::uint64_t next_u64() { return engine_(); }
    double uniform();  // [0, 1)
    double normal();
    std::uint64_t uniform_int(std::uint64_t n);  // [0, n)
    Complex complex_gaussian();                  // E|z|^2 = 1
    ComplexMatrix gaussian_matrix(Index rows, Index cols);
    ComplexVector gaussian_vector(Index n);
    std::uint64_t binomial(std::uint64_t n, double p);
    std::uint64_t seed() const { return seed_; }

    std::mt19937_64 &engine() { return engine_; }

   private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

}  // namespace replab

#endif  // REPLAB_RNG_HPP
