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

#ifndef REPLAB_TREE_HPP
#define REPLAB_TREE_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "replab/circuits.hpp"
#include "replab/linalg.hpp"
#include "replab/rng.hpp"

namespace replab {

inline constexpr std::size_t kDefaultMaxBranching = 16;
inline constexpr unsigned kDefaultMaxDepth = 6;
inline constexpr std::size_t kDefaultMaxLeaves = std::size_t{1} << 20;
inline constexpr double kPovmTol = 1e-8;

/// One rank-1 outcome: the POVM element is weight * d^k |psi><psi|.
struct PovmElement {
    double weight = 0.0;
    ComplexVector psi;
    int parent = -1;  // index of the general POVM element it refines, if any
};

/// Internal node of a measurement tree. children[v] is the node reached after
/// outcome v; all children are null on the last round.
struct PovmNode {
    std::string id;
    unsigned k = 1;
    Index d = 2;
    std::vector<PovmElement> outcomes;
    std::vector<std::shared_ptr<const PovmNode>> children;

    Index joint_dim() const;
};

/// Throws ValidationError (carrying the HS residual) unless
/// sum_v w_v d^k |psi_v><psi_v| = I within 1e-8 and all weights are positive.
void validate_povm(const PovmNode &node);
double povm_residual(const std::vector<PovmElement> &outcomes, Index joint_dim);

/// Rank-1 refinement of a general POVM by eigendecomposition; each outcome
/// remembers its parent element.
std::vector<PovmElement> refine_povm(const std::vector<ComplexMatrix> &elements);

/// Common node POVMs on (C^d)^{(x)k}.
std::vector<PovmElement> standard_basis_povm(Index d, unsigned k);
/// Orthonormal basis given by the columns of `basis`.
std::vector<PovmElement> basis_povm(const ComplexMatrix &basis);
/// Symmetric/antisymmetric basis of C^d (x) C^d (eigenbasis of SWAP).
std::vector<PovmElement> swap_eigenbasis_povm(Index d);
/// Random rank-1 POVM with m >= dim outcomes: psi_i ~ S^{-1/2} v_i for
/// Gaussian v_i and S = sum v_i v_i^dag.
std::vector<PovmElement> random_rank1_povm(Index dim, std::size_t m, Rng &rng);

/// Builds the outcome list for the node reached by `path` (outcome indices
/// from the root).
using NodeBuilder = std::function<std::vector<PovmElement>(const std::vector<int> &path)>;

class StrategyTree {
   public:
    /// Validates completeness at every node, uniform depth, and the caps.
    StrategyTree(std::shared_ptr<const PovmNode> root, unsigned depth, std::size_t max_branching = kDefaultMaxBranching,
                 unsigned max_depth = kDefaultMaxDepth);

    /// Node POVM depends only on the round; nodes are shared across branches.
    static StrategyTree nonadaptive(const std::vector<std::vector<PovmElement>> &rounds, Index d, unsigned k);
    /// Materializes every node by calling `builder` with its path.
    static StrategyTree build(const NodeBuilder &builder, unsigned depth, Index d, unsigned k,
                              std::size_t max_nodes = 1u << 16);

    const std::shared_ptr<const PovmNode> &root() const { return root_; }
    unsigned depth() const { return depth_; }
    unsigned k() const { return root_->k; }
    Index d() const { return root_->d; }
    bool nonadaptive() const { return nonadaptive_; }

    /// Node reached by following `path` (length < depth).
    const PovmNode &node_at(const std::vector<int> &path) const;

    /// Every distinct node (shared nodes once), root first.
    std::vector<const PovmNode *> distinct_nodes() const;

   private:
    std::shared_ptr<const PovmNode> root_;
    unsigned depth_;
    bool nonadaptive_ = false;
};

struct TranscriptStep {
    const PovmNode *node;
    int outcome;
};

/// A node at some depth, identified by its path and the steps leading to it.
struct TreePosition {
    std::vector<int> path;
    std::vector<TranscriptStep> steps;
    const PovmNode *node = nullptr;  // null at the leaves
};

/// All positions at `depth` in depth-first lexicographic order. depth == N
/// gives the leaves (transcripts).
std::vector<TreePosition> positions_at_depth(const StrategyTree &tree, unsigned depth,
                                             std::size_t max_positions = kDefaultMaxLeaves);

std::string path_string(const std::vector<int> &path);

/// Probability vector over transcripts (or depth-t positions), in the order of
/// positions_at_depth.
struct TranscriptDistribution {
    std::vector<std::string> paths;
    std::vector<double> probs;
    std::vector<double> stderrs;  // empty for exact distributions

    std::string to_csv() const;
    double total() const;
};

/// p_rho(leaf) = prod over steps of w_v d^k <psi_v| rho^{(x)k} |psi_v>.
TranscriptDistribution transcript_distribution(const StrategyTree &tree, const DensityMatrix &rho);
/// Marginal over depth-t positions (p^t).
TranscriptDistribution node_marginal(const StrategyTree &tree, const DensityMatrix &rho, unsigned depth);

/// Exact mixture over a finite list of states.
TranscriptDistribution mixture_transcript_distribution(const StrategyTree &tree, const std::vector<DensityMatrix> &states,
                                                       const std::vector<double> &weights);

/// Mixture over rho_U(eps) for U from `ensemble`: exact when the ensemble has
/// finite support, otherwise a sample mean with per-leaf standard errors.
TranscriptDistribution mixture_transcript_distribution(const StrategyTree &tree, const CircuitEnsemble &ensemble,
                                                       double epsilon, std::size_t n_samples, Rng &rng);

/// <psi| (I + eps O)^{(x)k} |psi> - 1 for Hermitian O on C^d.
double delta_perturbation(const ComplexVector &psi, const ComplexMatrix &observable, double epsilon, unsigned k);
/// Same for outcome v of `node` with O = U Z U^dag.
double delta_perturbation(const PovmNode &node, int outcome, const UnitaryMatrix &u, double epsilon);

/// prod_i (1 + delta_{u_{i-1}}(u_i)) along `path` from the root.
double likelihood_ratio(const StrategyTree &tree, const std::vector<int> &path, const UnitaryMatrix &u, double epsilon);
/// Ensemble-averaged likelihood ratio over a finite weighted list.
double likelihood_ratio(const StrategyTree &tree, const std::vector<int> &path, const std::vector<UnitaryMatrix> &us,
                        const std::vector<double> &weights, double epsilon);

/// sum_v w_v delta^U(v) delta^V(v).
double pairwise_correlation(const PovmNode &node, const UnitaryMatrix &u, const UnitaryMatrix &v, double epsilon);

double tv_distance(const TranscriptDistribution &p, const TranscriptDistribution &q);
double kl_divergence(const TranscriptDistribution &p, const TranscriptDistribution &q);
double chi_squared(const TranscriptDistribution &p, const TranscriptDistribution &q);

struct LeCamReport {
    double error0 = 0.0;  // P_{p0}(decide 1)
    double error1 = 0.0;  // P_{p1}(decide 0)
    double error_sum = 0.0;
    double tv = 0.0;
    bool holds = false;  // error_sum >= 1 - tv (up to 1e-12)
};
LeCamReport lecam_check(const TranscriptDistribution &p0, const TranscriptDistribution &p1, const std::vector<int> &decision);
/// Decide 1 exactly where p1 > p0.
std::vector<int> maximum_likelihood_decision(const TranscriptDistribution &p0, const TranscriptDistribution &p1);

struct RatioFloorReport {
    double min_ratio = 0.0;
    double tv = 0.0;
    bool premise = false;  // min p/q > 1 - delta
    bool holds = true;     // premise implies tv <= delta
};
RatioFloorReport likelihood_ratio_floor_check(const TranscriptDistribution &p, const TranscriptDistribution &q, double delta);

/// Node-table JSON: {"depth","k","d","nonadaptive","root","nodes":[{"id","outcomes":[{"weight","psi","child"}]}]}.
std::string tree_to_json(const StrategyTree &tree);
StrategyTree tree_from_json(const std::string &json);

}  // namespace replab

#endif  // REPLAB_TREE_HPP
