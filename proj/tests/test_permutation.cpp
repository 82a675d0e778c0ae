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


#include <array>
#include <cmath>

#include <gtest/gtest.h>

#include "replab/error.hpp"
#include "replab/permutation.hpp"
#include "replab/rng.hpp"

using namespace replab;

namespace {

mpz_class rising(unsigned d, unsigned m, unsigned step) {
    mpz_class p = 1;
    for (unsigned i = 0; i < m; ++i) p *= d + step * i;
    return p;
}

}  // namespace

TEST(Permutation, CyclesAndComposition) {
    const Permutation p({1, 2, 0, 3});  // 0->1->2->0, 3 fixed
    EXPECT_EQ(p.cycle_count(), 2u);
    EXPECT_EQ(p.cycle_type_key(), "3+1");
    EXPECT_FALSE(p.all_cycles_even());
    const Permutation q = Permutation::swap(4, 0, 3);
    const Permutation pq = p * q;
    for (unsigned i = 0; i < 4; ++i) EXPECT_EQ(pq(i), p(q(i)));
    EXPECT_EQ(p * p.inverse(), Permutation::identity(4));
    EXPECT_TRUE(Permutation::from_cycles(4, {{0, 1}, {2, 3}}).all_cycles_even());
    EXPECT_THROW(Permutation({0, 0, 1}), ArgumentError);
}

TEST(Permutation, EnumerationIsLexicographicAndRanked) {
    const auto all = enumerate_sym(4);
    ASSERT_EQ(all.size(), 24u);
    for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i].rank(), i);
    for (std::size_t i = 1; i < all.size(); ++i) EXPECT_LT(all[i - 1].images(), all[i].images());
    EXPECT_THROW(enumerate_sym(kMaxEnumerationDegree + 1), ResourceError);
}

TEST(Permutation, ClassSizesSumToFactorial) {
    for (unsigned m = 1; m <= 7; ++m) {
        std::uint64_t total = 0;
        for (const auto &parts : partitions(m)) total += class_size(parts);
        EXPECT_EQ(total, factorial(m));
    }
    EXPECT_EQ(class_size({2, 1}), 3u);
    EXPECT_EQ(class_size({2, 2}), 3u);
}

TEST(Permutation, CycleSumsMatchRisingProducts) {
    for (unsigned m = 1; m <= 6; ++m) {
        for (unsigned d = 1; d <= 6; ++d) {
            EXPECT_EQ(sum_d_power_cycles(m, d), rising(d, m, 1)) << "m=" << m << " d=" << d;
            const mpz_class even = m % 2 ? mpz_class(0) : mpz_class(static_cast<unsigned long>(factorial(m) / (factorial(m / 2) << (m / 2)))) * rising(d, m / 2, 2);
            EXPECT_EQ(sum_d_power_even_cycles(m, d), even) << "m=" << m << " d=" << d;
        }
    }
    EXPECT_EQ(sum_d_power_cycles(4, 4), 840);
    EXPECT_EQ(sum_d_power_even_cycles(4, 4), 72);
}

TEST(Permutation, OperatorTraceCountsCycles) {
    for (const auto &p : enumerate_sym(3)) {
        const ComplexMatrix op = permutation_operator(p, 3);
        EXPECT_NEAR(op.trace().real(), std::pow(3.0, p.cycle_count()), 1e-12);
        EXPECT_LT((permutation_operator(p.inverse(), 3) - op.transpose()).norm(), 1e-14);
    }
}

TEST(Permutation, OperatorIsARepresentation) {
    const auto all = enumerate_sym(3);
    for (const auto &p : all)
        for (const auto &q : all)
            EXPECT_LT((permutation_operator(p, 2) * permutation_operator(q, 2) - permutation_operator(p * q, 2)).norm(), 1e-14);
}

TEST(Permutation, CycleTraceMatchesDenseTrace) {
    Rng rng(3);
    std::array<ComplexMatrix, 3> f{rng.gaussian_matrix(2, 2), rng.gaussian_matrix(2, 2), rng.gaussian_matrix(2, 2)};
    const ComplexMatrix prod = tensor_product(tensor_product(f[0], f[1]), f[2]);
    for (const auto &p : enumerate_sym(3)) {
        const Complex dense = (permutation_operator(p, 2) * prod).trace();
        EXPECT_LT(std::abs(trace_perm_tensor(p, f) - dense), 1e-11) << p.cycle_type_key();
    }
}

TEST(Permutation, ApplyOnSelectedSlotsMatchesDenseOperator) {
    Rng rng(4);
    const ComplexVector v = rng.gaussian_vector(16);
    const Permutation p({1, 0});
    const std::array<unsigned, 2> slots{1, 3};
    // Dense: SWAP between factors 1 and 3 of four qubits.
    ComplexMatrix swap13 = ComplexMatrix::Zero(16, 16);
    for (Index i = 0; i < 16; ++i) {
        const Index b1 = (i >> 2) & 1, b3 = i & 1;
        const Index j = (i & ~Index{0b0101}) | (b3 << 2) | b1;
        swap13(j, i) = 1.0;
    }
    EXPECT_LT((apply_permutation(p, 2, 4, slots, v) - swap13 * v).norm(), 1e-14);
}
