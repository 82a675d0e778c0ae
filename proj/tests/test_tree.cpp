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
#include "replab/tasks.hpp"
#include "replab/tree.hpp"
#include "replab/weingarten.hpp"

using namespace replab;

namespace {

StrategyTree standard_tree(Index d, unsigned k, unsigned depth) {
    return StrategyTree::nonadaptive(std::vector<std::vector<PovmElement>>(depth, standard_basis_povm(d, k)), d, k);
}

}  // namespace

TEST(Povm, BuiltinPovmsAreComplete) {
    Rng rng(1);
    EXPECT_LT(povm_residual(standard_basis_povm(3, 2), 9), 1e-12);
    const auto swap = swap_eigenbasis_povm(3);
    EXPECT_EQ(swap.size(), 9u);
    EXPECT_LT(povm_residual(swap, 9), 1e-12);
    EXPECT_LT(povm_residual(random_rank1_povm(4, 7, rng), 4), 1e-10);
    EXPECT_LT(povm_residual(basis_povm(haar_sample(5, rng).matrix()), 5), 1e-10);
}

TEST(Povm, RefinementKeepsParents) {
    ComplexMatrix p = ComplexMatrix::Zero(3, 3);
    p(0, 0) = 0.5;
    p(1, 1) = 1.0;
    const ComplexMatrix q = ComplexMatrix::Identity(3, 3) - p;
    const auto refined = refine_povm({p, q});
    EXPECT_LT(povm_residual(refined, 3), 1e-12);
    int from_p = 0;
    for (const auto &o : refined) from_p += o.parent == 0;
    EXPECT_EQ(from_p, 2);  // rank of p
}

TEST(Povm, IncompleteNodeIsRejected) {
    auto outcomes = standard_basis_povm(2, 1);
    outcomes[0].weight *= 0.5;
    EXPECT_THROW(StrategyTree::nonadaptive({outcomes}, 2, 1), ValidationError);
    try {
        StrategyTree::nonadaptive({outcomes}, 2, 1);
    } catch (const ValidationError &e) {
        EXPECT_GT(e.residual(), 0.1);
    }
}

TEST(Tree, CapsAreEnforced) {
    EXPECT_THROW(standard_tree(2, 1, kDefaultMaxDepth + 1), ResourceError);
    EXPECT_THROW(standard_tree(32, 1, 1), ResourceError);
}

TEST(Tree, NullTranscriptsAreUniformForStandardBasis) {
    const StrategyTree tree = standard_tree(2, 1, 3);
    const auto p = transcript_distribution(tree, DensityMatrix::maximally_mixed(2));
    ASSERT_EQ(p.probs.size(), 8u);
    for (double x : p.probs) EXPECT_NEAR(x, 0.125, 1e-14);
    EXPECT_EQ(p.paths.front(), "0-0-0");
}

TEST(Tree, DistributionsNormalizeAndMarginalize) {
    Rng rng(2);
    const StrategyTree tree = random_strategy_tree(2, 1, 3, 3, true, rng);
    EXPECT_FALSE(tree.nonadaptive());
    const auto rho = build_state(haar_sample(2, rng), 0.3).rho;
    const auto p = transcript_distribution(tree, rho);
    EXPECT_NEAR(p.total(), 1.0, 1e-12);
    for (unsigned t = 0; t <= 3; ++t) EXPECT_NEAR(node_marginal(tree, rho, t).total(), 1.0, 1e-12);
}

TEST(Tree, LikelihoodRatioIsProbabilityRatio) {
    Rng rng(3);
    const StrategyTree tree = random_strategy_tree(2, 2, 2, 4, true, rng);
    const UnitaryMatrix u = haar_sample(2, rng);
    const double eps = 1.0 / 6.0;
    const auto p1 = transcript_distribution(tree, build_state(u, eps).rho);
    const auto p0 = transcript_distribution(tree, DensityMatrix::maximally_mixed(2));
    const auto leaves = positions_at_depth(tree, 2);
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        EXPECT_NEAR(likelihood_ratio(tree, leaves[i].path, u, eps), p1.probs[i] / p0.probs[i], 1e-10);
    }
}

TEST(Tree, FiniteMixtureAgreesWithStateList) {
    Rng rng(4);
    const StrategyTree tree = random_strategy_tree(2, 1, 2, 3, false, rng);
    std::vector<UnitaryMatrix> us{haar_sample(2, rng), haar_sample(2, rng)};
    const auto ens = CircuitEnsemble::finite(us, {1.0, 1.0});
    const auto via_ensemble = mixture_transcript_distribution(tree, ens, 0.2, 0, rng);
    const auto via_states = mixture_transcript_distribution(tree, {build_state(us[0], 0.2).rho, build_state(us[1], 0.2).rho}, {0.5, 0.5});
    for (std::size_t i = 0; i < via_states.probs.size(); ++i) EXPECT_NEAR(via_ensemble.probs[i], via_states.probs[i], 1e-14);
}

TEST(Tree, PerturbationBoundedAtAdmissibleStrength) {
    Rng rng(5);
    for (unsigned k = 1; k <= 3; ++k) {
        const double eps = 1.0 / (3.0 * k);
        for (int rep = 0; rep < 20; ++rep) {
            const ComplexVector psi = PureState::normalized(rng.gaussian_vector(static_cast<Index>(std::pow(2, k)))).amplitudes();
            const double delta = delta_perturbation(psi, rotated_z(haar_sample(2, rng)), eps, k);
            EXPECT_LE(std::abs(delta), 1.0);
        }
    }
}

TEST(Tree, LeCamAndRatioFloor) {
    Rng rng(6);
    const StrategyTree tree = standard_tree(2, 1, 2);
    const auto p0 = transcript_distribution(tree, DensityMatrix::maximally_mixed(2));
    const auto p1 = transcript_distribution(tree, build_state(haar_sample(2, rng), 0.3).rho);
    const LeCamReport best = lecam_check(p0, p1, maximum_likelihood_decision(p0, p1));
    EXPECT_NEAR(best.error_sum, 1.0 - best.tv, 1e-12);
    EXPECT_TRUE(best.holds);
    const LeCamReport constant = lecam_check(p0, p1, std::vector<int>(p0.probs.size(), 1));
    EXPECT_NEAR(constant.error_sum, 1.0, 1e-12);
    const RatioFloorReport floor = likelihood_ratio_floor_check(p1, p0, 0.5);
    EXPECT_TRUE(floor.holds);
}

TEST(Tree, DivergencesOnKnownPair) {
    TranscriptDistribution p{{"0", "1"}, {0.5, 0.5}, {}}, q{{"0", "1"}, {0.25, 0.75}, {}};
    EXPECT_NEAR(tv_distance(p, q), 0.25, 1e-15);
    EXPECT_NEAR(kl_divergence(p, q), 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0), 1e-15);
    EXPECT_NEAR(chi_squared(p, q), 0.0625 / 0.25 + 0.0625 / 0.75, 1e-15);
    TranscriptDistribution r{{"a", "b"}, {0.5, 0.5}, {}};
    EXPECT_THROW(tv_distance(p, r), ArgumentError);
}

TEST(Tree, JsonRoundTripPreservesDistributions) {
    Rng rng(7);
    const StrategyTree tree = random_strategy_tree(2, 1, 3, 2, true, rng);
    const StrategyTree back = tree_from_json(tree_to_json(tree));
    EXPECT_EQ(tree_to_json(back), tree_to_json(tree));
    const auto rho = build_state(haar_sample(2, rng), 0.3).rho;
    const auto a = transcript_distribution(tree, rho), b = transcript_distribution(back, rho);
    for (std::size_t i = 0; i < a.probs.size(); ++i) EXPECT_NEAR(a.probs[i], b.probs[i], 1e-15);
    const StrategyTree shared = standard_tree(2, 1, 3);
    EXPECT_TRUE(tree_from_json(tree_to_json(shared)).nonadaptive());
    EXPECT_THROW(tree_from_json("{\"depth\": 1}"), ArgumentError);
}

TEST(Tree, CsvExport) {
    const auto p = transcript_distribution(standard_tree(2, 1, 1), DensityMatrix::maximally_mixed(2));
    EXPECT_EQ(p.to_csv().substr(0, 17), "path,probability\n");
}
