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

#include "replab/design.hpp"
#include "replab/error.hpp"
#include "replab/parallel.hpp"
#include "replab/permutation.hpp"
#include "replab/weingarten.hpp"

using namespace replab;

TEST(Twirl, FixesPermutationOperators) {
    for (const auto &p : enumerate_sym(2)) {
        const ComplexMatrix op = permutation_operator(p, 3);
        EXPECT_LT((exact_haar_moment_apply(op, 3, 2) - op).norm(), 1e-12);
    }
}

TEST(Twirl, ProjectsOntoCommutant) {
    // Twirl of |00><00| on C^2 (x) C^2 is (I + SWAP) / (d(d+1)).
    ComplexMatrix e = ComplexMatrix::Zero(4, 4);
    e(0, 0) = 1.0;
    const ComplexMatrix expect = (ComplexMatrix::Identity(4, 4) + permutation_operator(Permutation::swap(2, 0, 1), 2)) / 6.0;
    EXPECT_LT((exact_haar_moment_apply(e, 2, 2) - expect).norm(), 1e-12);
}

TEST(Twirl, IdentityEnsembleReturnsInput) {
    Rng rng(1);
    const auto probes = default_probes(2, 2, rng);
    for (const auto &p : probes) {
        const ComplexMatrix out = empirical_moment_apply(CircuitEnsemble::identity(2), p, 10, rng);
        EXPECT_LT((out - p.to_dense()).norm(), 1e-12) << p.label;
    }
}

TEST(Probe, ConjugationFormsAgree) {
    Rng rng(2);
    const UnitaryMatrix u = haar_sample(2, rng);
    for (const auto &p : default_probes(2, 3, rng)) {
        const ComplexMatrix dense = tensor_power(u.matrix(), 3) * p.to_dense() * tensor_power(u.matrix(), 3).adjoint();
        EXPECT_LT((p.conjugated(u) - dense).norm(), 1e-11) << p.label;
    }
}

TEST(DesignDistance, HaarIsCloseAndIdentityIsFar) {
    Rng rng(3);
    const auto probes = default_probes(2, 2, rng);
    const MomentReport haar = design_distance(CircuitEnsemble::haar(1), 2, probes, 3000, rng);
    for (const auto &p : haar.probes) EXPECT_LE(std::abs(p.distance_sq), 5.0 * p.distance_sq_se + 1e-12) << p.label;
    const MomentReport id = design_distance(CircuitEnsemble::identity(2), 2, probes, 300, rng);
    EXPECT_GT(id.distance_hs, 0.3);
    EXPECT_THROW(design_distance(CircuitEnsemble::haar(1), 2, probes, 200, rng), ArgumentError);
}

TEST(DesignDistance, WorkerCountDoesNotChangeResult) {
    auto run = [](unsigned workers) {
        set_default_workers(workers);
        Rng rng(4);
        const auto probes = default_probes(2, 2, rng);
        return design_distance(CircuitEnsemble::uniform_clifford(1), 2, probes, 500, rng).distance_sq;
    };
    const double one = run(1), three = run(3);
    set_default_workers(1);
    EXPECT_EQ(one, three);
}

TEST(FramePotential, HaarValues) {
    EXPECT_NEAR(haar_frame_potential(4, 2), 2.0, 1e-12);
    EXPECT_NEAR(haar_frame_potential(8, 3), 6.0, 1e-10);
    EXPECT_THROW(haar_frame_potential(1, 2), UnsupportedRegimeError);
    Rng rng(5);
    const Estimate fp = frame_potential(CircuitEnsemble::haar(1), 1, 20000, rng);
    EXPECT_NEAR(fp.mean, 1.0, 5.0 * fp.se);
}

TEST(Concentration, ConstantFunctionHasNoSpread) {
    Rng rng(6);
    const TailReport r = concentration_probe(constant_function(4, 2.5), 500, rng);
    EXPECT_NEAR(r.mean, 2.5, 1e-12);
    EXPECT_NEAR(r.sigma_hat, 0.0, 1e-12);
}

TEST(Concentration, TraceFormScaleIsOrderInverseRootDimension) {
    Rng rng(7);
    ComplexMatrix a = ComplexMatrix::Zero(16, 16), b = ComplexMatrix::Zero(16, 16);
    a(0, 0) = 1.0;
    for (Index i = 0; i < 16; ++i) b(i, i) = i % 2 ? -1.0 : 1.0;
    const LipschitzFunction f = trace_form(a, b);
    EXPECT_NEAR(f.lipschitz, 2.0, 1e-12);
    const TailReport r = concentration_probe(f, 4000, rng);
    EXPECT_NEAR(r.mean, 0.0, 0.02);
    EXPECT_GT(r.normalized, 0.05);
    EXPECT_LT(r.normalized, 2.0);
}
