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

#include "replab/circuits.hpp"
#include "replab/error.hpp"
#include "replab/linalg.hpp"
#include "replab/rng.hpp"
#include "replab/weingarten.hpp"

using namespace replab;

namespace {

ComplexMatrix random_matrix(Index r, Index c, Rng &rng) { return rng.gaussian_matrix(r, c); }

}  // namespace

TEST(Linalg, TensorProductMatchesIndexFormula) {
    Rng rng(1);
    const ComplexMatrix a = random_matrix(2, 3, rng), b = random_matrix(3, 2, rng);
    const ComplexMatrix k = tensor_product(a, b);
    ASSERT_EQ(k.rows(), 6);
    ASSERT_EQ(k.cols(), 6);
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 3; ++j)
            for (Index p = 0; p < 3; ++p)
                for (Index q = 0; q < 2; ++q) EXPECT_LT(std::abs(k(i * 3 + p, j * 2 + q) - a(i, j) * b(p, q)), 1e-14);
}

TEST(Linalg, PartialTraceOfProductOperator) {
    Rng rng(2);
    const ComplexMatrix a = random_matrix(2, 2, rng), b = random_matrix(3, 3, rng), c = random_matrix(2, 2, rng);
    const ComplexMatrix abc = tensor_product(tensor_product(a, b), c);
    const std::array<std::size_t, 3> dims{2, 3, 2};
    const std::array<std::size_t, 1> keep_mid{1};
    EXPECT_LT((partial_trace(abc, dims, keep_mid) - a.trace() * c.trace() * b).norm(), 1e-12);
    const std::array<std::size_t, 2> keep_outer{2, 0};
    EXPECT_LT((partial_trace(abc, dims, keep_outer) - b.trace() * tensor_product(a, c)).norm(), 1e-12);
}

TEST(Linalg, SchattenNorms) {
    ComplexMatrix h = ComplexMatrix::Zero(2, 2);
    h(0, 0) = 3.0;
    h(1, 1) = -4.0;
    EXPECT_NEAR(schatten_norm(h, Schatten::One), 7.0, 1e-12);
    EXPECT_NEAR(schatten_norm(h, Schatten::Two), 5.0, 1e-12);
    EXPECT_NEAR(schatten_norm(h, Schatten::Infinity), 4.0, 1e-12);
    ComplexMatrix nil = ComplexMatrix::Zero(2, 2);
    nil(0, 1) = 2.0;
    EXPECT_NEAR(schatten_norm(nil, Schatten::One), 2.0, 1e-12);
    EXPECT_NEAR(schatten_norm(nil, Schatten::Infinity), 2.0, 1e-12);
}

TEST(Linalg, ValidatingConstructorsReject) {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(0, 0) = 1.1;
    EXPECT_THROW(UnitaryMatrix{m}, ValidationError);
    ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_THROW(DensityMatrix{neg}, ValidationError);
    ComplexVector v = ComplexVector::Zero(2);
    v(0) = 2.0;
    EXPECT_THROW(PureState{v}, ValidationError);
    EXPECT_NO_THROW(PureState::normalized(v));
}

TEST(Linalg, HelstromSuccessProbabilities) {
    const DensityMatrix zero = DensityMatrix::pure(PureState::basis(2, 0).amplitudes());
    const DensityMatrix one = DensityMatrix::pure(PureState::basis(2, 1).amplitudes());
    EXPECT_NEAR(helstrom_measurement(zero, one).success_prob, 1.0, 1e-12);
    EXPECT_NEAR(helstrom_measurement(zero, zero).success_prob, 0.5, 1e-12);
    // rho_mm against (I + eps O)/d: trace distance eps/2 for a traceless involution O.
    Rng rng(3);
    const double eps = 0.3;
    const auto st = build_state(haar_sample(8, rng), eps);
    EXPECT_NEAR(helstrom_measurement(DensityMatrix::maximally_mixed(8), st.rho).success_prob, 0.5 + eps / 4.0, 1e-10);
}

TEST(Linalg, SlotOperationsMatchDenseKronecker) {
    Rng rng(4);
    const ComplexMatrix op = random_matrix(3, 3, rng);
    const ComplexVector psi = rng.gaussian_vector(27);
    const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
    const ComplexMatrix on_middle = tensor_product(tensor_product(id, op), id);
    EXPECT_LT((apply_on_slot(op, 1, 3, psi) - on_middle * psi).norm(), 1e-11);
    const ComplexMatrix cube = tensor_power(op, 3);
    EXPECT_LT((apply_tensor_power(op, 3, psi) - cube * psi).norm(), 1e-10);
    EXPECT_LT(std::abs(tensor_power_expectation(op, 3, psi) - psi.dot(cube * psi)), 1e-9);
}

TEST(Linalg, MemoryBudgetGuardsLargeOperators) {
    const std::size_t saved = memory_budget_bytes();
    set_memory_budget_bytes(1 << 20);
    EXPECT_THROW(require_matrix_budget(1024, 1024, "test"), ResourceError);
    EXPECT_THROW(tensor_power(ComplexMatrix::Identity(8, 8), 6), ResourceError);
    set_memory_budget_bytes(saved);
    EXPECT_NO_THROW(require_matrix_budget(1024, 1024, "test"));
}

TEST(Linalg, CanonicalPhaseMakesFirstEntryRealPositive) {
    Rng rng(5);
    const UnitaryMatrix u = haar_sample(4, rng).canonical_phase();
    Index first = 0;
    while (std::abs(u.matrix()(first, 0)) < 1e-12) ++first;
    EXPECT_NEAR(u.matrix()(first, 0).imag(), 0.0, 1e-12);
    EXPECT_GT(u.matrix()(first, 0).real(), 0.0);
}
