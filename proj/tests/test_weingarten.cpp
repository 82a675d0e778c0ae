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

#include <gtest/gtest.h>

#include "replab/error.hpp"
#include "replab/weingarten.hpp"

using namespace replab;

TEST(Weingarten, DegreeTwoValues) {
    const auto t = weingarten_table(2, 4);
    EXPECT_EQ(t->values().at("1+1"), mpq_class(1, 15));
    EXPECT_EQ(t->values().at("2"), mpq_class(-1, 60));
    EXPECT_EQ(rational_string(t->values().at("2")), "-1/60");
    for (unsigned d = 2; d <= 9; ++d) {
        const auto u = weingarten_table(2, d);
        const mpq_class dd(d);
        EXPECT_EQ(u->values().at("1+1"), 1 / (dd * dd - 1));
        EXPECT_EQ(u->values().at("2"), -1 / (dd * (dd * dd - 1)));
    }
}

TEST(Weingarten, DegreeThreeValues) {
    for (unsigned d = 3; d <= 8; ++d) {
        const auto t = weingarten_table(3, d);
        const mpq_class dd(d), den = dd * (dd * dd - 1) * (dd * dd - 4);
        EXPECT_EQ(t->values().at("1+1+1"), (dd * dd - 2) / den);
        EXPECT_EQ(t->values().at("2+1"), -dd / den);
        EXPECT_EQ(t->values().at("3"), 2 / den);
    }
}

TEST(Weingarten, DegreeOneIsInverseDimension) {
    EXPECT_EQ(weingarten_table(1, 7)->values().at("1"), mpq_class(1, 7));
}

TEST(Weingarten, AbsoluteSumIdentity) {
    for (unsigned m = 1; m <= 4; ++m)
        for (unsigned d = m; d <= 8; ++d) EXPECT_EQ(weingarten_table(m, d)->absolute_sum(), weingarten_table(m, d)->absolute_sum_closed_form());
    EXPECT_EQ(weingarten_table(2, 4)->absolute_sum_closed_form(), mpq_class(1, 12));
}

TEST(Weingarten, RegimeErrors) {
    EXPECT_THROW(build_weingarten_table(3, 2), UnsupportedRegimeError);
    EXPECT_THROW(build_weingarten_table(kMaxWeingartenDegree + 1, 10), ResourceError);
}

TEST(Weingarten, TracePowerOfRankOneProjectors) {
    // tr(|0><0| U |0><0| U^dag) = |U_00|^2, whose m-th moment is m!(d-1)!/(d+m-1)!.
    for (unsigned d = 3; d <= 6; ++d) {
        ComplexMatrix p = ComplexMatrix::Zero(d, d);
        p(0, 0) = 1.0;
        for (unsigned m = 1; m <= 3; ++m) {
            double expect = 1.0;
            for (unsigned i = 1; i <= m; ++i) expect *= static_cast<double>(i) / static_cast<double>(d + i - 1);
            EXPECT_NEAR(haar_expect_trace_power(p, p, m).real(), expect, 1e-12) << "d=" << d << " m=" << m;
        }
    }
}

TEST(Weingarten, TracePowerFirstMoment) {
    Rng rng(5);
    const ComplexMatrix a = rng.gaussian_matrix(4, 4), b = rng.gaussian_matrix(4, 4);
    EXPECT_LT(std::abs(haar_expect_trace_power(a, b, 1) - a.trace() * b.trace() / 4.0), 1e-12);
}

TEST(Weingarten, EntryMomentsOfSingleColumn) {
    // E|U_00|^2 = 1/d and E|U_00|^2|U_11|^2 = 1/(d^2 - 1) for d >= 2.
    const auto t1 = weingarten_table(1, 5);
    EXPECT_NEAR(haar_moment_entries(*t1, {{0}, {0}, {0}, {0}}).real(), 0.2, 1e-14);
    const auto t2 = weingarten_table(2, 5);
    EXPECT_NEAR(haar_moment_entries(*t2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}}).real(), 1.0 / 24.0, 1e-14);
}

TEST(Weingarten, HaarSampleIsUnitary) {
    Rng rng(6);
    const UnitaryMatrix u = haar_sample(6, rng);
    EXPECT_LT((u.matrix().adjoint() * u.matrix() - ComplexMatrix::Identity(6, 6)).norm(), 1e-12);
}

TEST(Weingarten, DecayRatiosAreBounded) {
    const MontanaroReport r = montanaro_bound_check(2, 8);
    EXPECT_TRUE(r.bounded);
    EXPECT_GT(r.max_ratio, 0.0);
    EXPECT_THROW(montanaro_bound_check(3, 4), ArgumentError);
}
