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


#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "replab/circuits.hpp"
#include "replab/error.hpp"
#include "replab/weingarten.hpp"

using namespace replab;

namespace {

ComplexMatrix pauli(char c) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    switch (c) {
        case 'X': m(0, 1) = m(1, 0) = 1.0; break;
        case 'Y': m(0, 1) = Complex(0, -1); m(1, 0) = Complex(0, 1); break;
        case 'Z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
        default: m = ComplexMatrix::Identity(2, 2);
    }
    return m;
}

}  // namespace

TEST(Pauli, MatrixPhaseConvention) {
    // x = z = 1 on one qubit is Y = i X Z.
    const SignedPauli y{1, 1, 1, false};
    EXPECT_LT((y.matrix() - pauli('Y')).norm(), 1e-14);
    const SignedPauli minus_z{1, 0, 1, true};
    EXPECT_LT((minus_z.matrix() + pauli('Z')).norm(), 1e-14);
    const auto found = as_signed_pauli(-pauli('X'));
    ASSERT_TRUE(found.has_value());
    EXPECT_EQ(found->x, 1u);
    EXPECT_EQ(found->z, 0u);
    EXPECT_TRUE(found->sign);
    EXPECT_FALSE(as_signed_pauli(ComplexMatrix::Identity(2, 2) * Complex(0, 1)).has_value());
}

TEST(Pauli, CommutationSymplecticForm) {
    const SignedPauli x{1, 1, 0, false}, z{1, 0, 1, false};
    EXPECT_FALSE(x.commutes_with(z));
    const SignedPauli xx{2, 3, 0, false}, zz{2, 0, 3, false};
    EXPECT_TRUE(xx.commutes_with(zz));
}

TEST(Clifford, SynthesisRealizesTableau) {
    Rng rng(1);
    for (unsigned n = 1; n <= 3; ++n) {
        for (int rep = 0; rep < 5; ++rep) {
            const CliffordTableau t = sample_clifford_tableau(n, rng);
            const UnitaryMatrix u = synthesize_clifford(t);
            for (unsigned j = 0; j < n; ++j) {
                const std::uint32_t bit = 1u << (n - 1 - j);  // qubit 0 is the most significant
                const SignedPauli xj{n, bit, 0, false}, zj{n, 0, bit, false};
                EXPECT_LT((u.matrix() * xj.matrix() * u.matrix().adjoint() - t.x_images[j].matrix()).norm(), 1e-10);
                EXPECT_LT((u.matrix() * zj.matrix() * u.matrix().adjoint() - t.z_images[j].matrix()).norm(), 1e-10);
            }
        }
    }
}

TEST(Clifford, SamplesNormalizePauliGroup) {
    Rng rng(2);
    for (unsigned n = 1; n <= 3; ++n) {
        const UnitaryMatrix u = sample_clifford(n, rng);
        EXPECT_TRUE(is_clifford(u));
    }
    EXPECT_FALSE(is_clifford(default_v_gate()));
}

TEST(Clifford, DefaultGateIsT) {
    const UnitaryMatrix t = default_v_gate();
    EXPECT_NEAR(std::abs(t.matrix()(0, 0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(t.matrix()(1, 1) - std::polar(1.0, M_PI / 4)), 0.0, 1e-15);
}

TEST(Interleaved, IdentityGateGivesCliffords) {
    Rng rng(3);
    const UnitaryMatrix id = UnitaryMatrix::identity(2);
    for (int i = 0; i < 5; ++i) EXPECT_TRUE(is_clifford(sample_interleaved(2, 3, id, rng)));
    const UnitaryMatrix u = sample_interleaved(2, 0, default_v_gate(), rng);
    EXPECT_LT((u.matrix() - ComplexMatrix::Identity(4, 4)).norm(), 1e-14);
}

TEST(Interleaved, TGateLeavesCliffordGroup) {
    Rng rng(4);
    int non_clifford = 0;
    for (int i = 0; i < 20; ++i) non_clifford += !is_clifford(sample_interleaved(2, 4, default_v_gate(), rng));
    EXPECT_GT(non_clifford, 0);
}

TEST(StateFamily, RotatedStateProperties) {
    Rng rng(5);
    const double eps = 0.25;
    const auto st = build_state(haar_sample(8, rng), eps);
    const ComplexMatrix &o = st.observable;
    EXPECT_NEAR(std::abs(o.trace()), 0.0, 1e-12);
    EXPECT_LT((o * o - ComplexMatrix::Identity(8, 8)).norm(), 1e-12);
    EXPECT_NEAR((o * st.rho.matrix()).trace().real(), eps, 1e-12);
    EXPECT_NEAR(st.rho.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_THROW(build_state(haar_sample(2, rng), 1.5), ArgumentError);
}

TEST(Ensemble, JsonRoundTrip) {
    const auto e = CircuitEnsemble::interleaved(2, 3, default_v_gate(), "T");
    const auto back = CircuitEnsemble::from_json(e.to_json());
    EXPECT_EQ(back.to_json(), e.to_json());
    EXPECT_EQ(back.dim(), 4);
    Rng a(6), b(6);
    EXPECT_LT((e.sample(a).matrix() - back.sample(b).matrix()).norm(), 1e-14);
    EXPECT_THROW(CircuitEnsemble::from_json(R"({"kind":"nope"})"), ArgumentError);
    EXPECT_THROW(CircuitEnsemble::from_json("{"), ArgumentError);
}

TEST(Ensemble, FiniteSupportSamplesMembers) {
    Rng rng(7);
    std::vector<UnitaryMatrix> members{haar_sample(2, rng), haar_sample(2, rng)};
    const auto e = CircuitEnsemble::finite(members, {1.0, 3.0});
    EXPECT_TRUE(e.finite_support());
    int second = 0;
    for (int i = 0; i < 4000; ++i) second += (e.sample(rng).matrix() - members[1].matrix()).norm() < 1e-14;
    EXPECT_NEAR(second / 4000.0, 0.75, 0.04);
}
