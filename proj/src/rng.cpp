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

#include "replab/rng.hpp"

#include <cmath>

#include "replab/error.hpp"

namespace replab {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(derive_seed(seed, stream)) {}

double Rng::uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

double Rng::normal() { return normal_(engine_); }

std::uint64_t Rng::uniform_int(std::uint64_t n) {
    if (n == 0) throw ArgumentError("uniform_int: empty range");
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

Complex Rng::complex_gaussian() {
    const double re = normal();
    const double im = normal();
    return {re * M_SQRT1_2, im * M_SQRT1_2};
}

ComplexMatrix Rng::gaussian_matrix(Index rows, Index cols) {
    ComplexMatrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) m(i, j) = complex_gaussian();
    }
    return m;
}

ComplexVector Rng::gaussian_vector(Index n) {
    ComplexVector v(n);
    for (Index i = 0; i < n; ++i) v(i) = complex_gaussian();
    return v;
}

std::uint64_t Rng::binomial(std::uint64_t n, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("binomial: probability outside [0,1]");
    return std::binomial_distribution<std::uint64_t>(n, p)(engine_);
}

}  // namespace replab
