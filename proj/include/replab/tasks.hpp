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

#ifndef REPLAB_TASKS_HPP
#define REPLAB_TASKS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "replab/circuits.hpp"
#include "replab/design.hpp"
#include "replab/linalg.hpp"
#include "replab/rng.hpp"
#include "replab/stats.hpp"
#include "replab/tree.hpp"

namespace replab {

inline constexpr unsigned kMaxPhiReplicas = 4;
inline constexpr unsigned kMaxExactReplicas = 3;

// ---------------------------------------------------------------------------
// Perturbation operators.

enum class Parity { Odd, Even };

/// Odd and even parts of (I + eps O)^{(x)k} - I with O = U Z U^dag:
/// phi1 sums eps^|S| O_S over odd |S|, phi0 over even nonempty |S|.
struct PhiOperators {
    unsigned k = 1;
    double epsilon = 0.0;
    ComplexMatrix phi0;
    ComplexMatrix phi1;
};
PhiOperators build_phi_operators(const UnitaryMatrix &u, double epsilon, unsigned k);

/// <psi| Phi_parity |psi> for the given observable, without forming Phi.
double phi_expectation(const ComplexVector &psi, const ComplexMatrix &observable, double epsilon, unsigned k, Parity parity);

/// E_Haar <psi| O_S |psi> where O = U Z U^dag acts on the slots in `subset`.
double first_moment_exact(const ComplexVector &psi, Index d, unsigned k, const std::vector<unsigned> &subset);

/// E_Haar[delta(psi)] = sum over nonempty S of eps^|S| E<psi|O_S|psi>.
double expected_delta_exact(const ComplexVector &psi, Index d, unsigned k, double epsilon);

/// Exact Haar value of E[<psi|Phi_parity|psi>^2]. Needs k <= 3 and d >= 2k.
double second_moment_exact(const ComplexVector &psi, Index d, unsigned k, double epsilon, Parity parity);

/// Sample mean of <psi|Phi_parity|psi>^2 over the ensemble.
Estimate second_moment_mc(const ComplexVector &psi, double epsilon, unsigned k, Parity parity,
                          const CircuitEnsemble &ensemble, std::size_t n_samples, Rng &rng);

/// E_Haar[phi^{U,V}] at a node for independent U, V:
/// sum_v w_v (E_U delta_v)^2.
double expected_pairwise_correlation_exact(const PovmNode &node, double epsilon);

// ---------------------------------------------------------------------------
// TV bound.

struct TvBoundReport {
    double value = 0.0;        // 2 N max bracket
    double max_bracket = 0.0;  // E<Phi1>^2 + 2 sqrt(E<Phi0>^2)
    std::size_t vectors = 0;
    unsigned rounds = 0;
};

/// Bracket evaluated with exact Haar moments for every measurement vector.
TvBoundReport tv_bound_rhs(const std::vector<ComplexVector> &vectors, Index d, unsigned k, unsigned rounds, double epsilon);
TvBoundReport tv_bound_rhs(const StrategyTree &tree, double epsilon);

/// Same bracket from Monte Carlo moments over an arbitrary ensemble.
TvBoundReport tv_bound_rhs_mc(const StrategyTree &tree, double epsilon, const CircuitEnsemble &ensemble,
                              std::size_t n_samples, Rng &rng);

/// Every outcome vector appearing in the tree (shared nodes once).
std::vector<ComplexVector> tree_vectors(const StrategyTree &tree);

/// Tree whose nodes carry random rank-1 POVMs with `branching` outcomes
/// (branching >= d^k). Adaptive trees draw a fresh POVM per path from a stream
/// keyed by the path; nonadaptive trees draw one POVM per round.
StrategyTree random_strategy_tree(Index d, unsigned k, unsigned depth, std::size_t branching, bool adaptive, Rng &rng);

// ---------------------------------------------------------------------------
// Tasks and strategies.

enum class TaskKind { Rqc, Mixedness };

struct TaskInstance {
    TaskKind kind = TaskKind::Mixedness;
    unsigned n = 1;
    Index d = 2;
    unsigned k = 1;
    double epsilon = 0.0;
    unsigned rounds = 1;  // N
    CircuitEnsemble ensemble = CircuitEnsemble::haar(1);
    std::uint64_t seed = 0;

    /// Circuit ensemble alternative; requires eps <= 1/(3k).
    static TaskInstance rqc(unsigned n, unsigned k, double epsilon, unsigned rounds, CircuitEnsemble ensemble,
                            std::uint64_t seed = 0);
    /// Haar-rotated alternative rho_U(eps).
    static TaskInstance mixedness(unsigned n, unsigned k, double epsilon, unsigned rounds, std::uint64_t seed = 0);

    std::string to_json() const;
};

/// Measurement strategy as a node function of the transcript so far.
struct Strategy {
    std::string name;
    Index d = 2;
    unsigned k = 1;
    unsigned rounds = 1;
    bool nonadaptive = true;
    std::function<std::vector<PovmElement>(const std::vector<int> &)> node;
    /// Every vector the strategy can ever measure; used to evaluate the TV bound.
    std::vector<ComplexVector> candidate_vectors;
};

Strategy tree_strategy(const StrategyTree &tree, std::string name = "tree");
Strategy standard_basis_strategy(Index d, unsigned k, unsigned rounds);
/// One Haar-random orthonormal basis per round, fixed at construction.
Strategy haar_basis_strategy(Index d, unsigned k, unsigned rounds, Rng &rng);
/// Chooses, at each node, the candidate basis (standard plus `random_bases`
/// Haar bases) maximizing the chi-squared distance between the posterior
/// predictive under the alternative and the null outcome distribution.
Strategy greedy_adaptive_strategy(Index d, unsigned k, unsigned rounds, double epsilon,
                                  std::vector<UnitaryMatrix> reference, std::size_t random_bases, Rng &rng);
/// Each round measures the two-outcome Helstrom POVM (refined to rank one)
/// between rho_mm^{(x)k} and the reference mixture of rho_U^{(x)k}.
Strategy helstrom_batch_strategy(Index d, unsigned k, unsigned rounds, double epsilon,
                                 const std::vector<UnitaryMatrix> &reference);

/// Nonadaptive tree from a strategy whose node does not depend on the path.
StrategyTree strategy_tree(const Strategy &s);

struct SuccessReport {
    std::string strategy;
    std::size_t trials = 0;
    std::size_t successes = 0;
    double success_rate = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
    double advantage = 0.0;  // 2 * success_rate - 1
};

/// Monte Carlo over (hypothesis coin, U draw, transcript). The decision is 1
/// iff the mean likelihood ratio over `reference_size` ensemble draws exceeds 1.
SuccessReport run_strategy(const TaskInstance &task, const Strategy &strategy, std::size_t trials, Rng &rng,
                           std::size_t reference_size = 64);

// ---------------------------------------------------------------------------
// Fully entangled upper-bound proxy.

/// Single-elimination tournament of pairwise Helstrom tests.
class HelstromTournament {
   public:
    explicit HelstromTournament(std::vector<DensityMatrix> candidates);
    std::size_t size() const { return candidates_.size(); }
    /// Each match measures the pair's Helstrom projector on `copies_per_match`
    /// fresh copies of `unknown` (binomial sampling) and advances i when the
    /// observed frequency reaches the midpoint of tr(P sigma_i), tr(P sigma_j).
    std::size_t select(const DensityMatrix &unknown, std::size_t copies_per_match, Rng &rng) const;

   private:
    struct Match {
        ComplexMatrix projector;
        double mid = 0.5;
        bool i_above = true;  // tr(P sigma_i) >= tr(P sigma_j)
    };
    const Match &match(std::size_t i, std::size_t j) const;
    std::vector<DensityMatrix> candidates_;
    std::vector<Match> matches_;  // upper triangle, row-major
};

std::size_t helstrom_tournament(const std::vector<DensityMatrix> &candidates, std::size_t copies_per_match,
                                const DensityMatrix &unknown, Rng &rng);

/// ceil(64 / eps^2).
std::size_t tournament_copies(double epsilon);

struct TournamentReport {
    std::size_t candidates = 0;
    std::size_t copies_per_match = 0;
    std::size_t trials = 0;
    std::size_t successes = 0;
    double success_rate = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
};

/// Candidates {rho_mm} plus `alternatives` states rho_U(eps) with U from the
/// ensemble; each trial picks the unknown uniformly among the candidates.
TournamentReport run_tournament(const CircuitEnsemble &ensemble, double epsilon, std::size_t alternatives,
                                std::size_t copies_per_match, std::size_t trials, Rng &rng);

/// Optimal success 1/2 + 1/4 || a^{(x)N} - b^{(x)N} ||_1. Commuting inputs are
/// handled exactly through their joint spectrum; otherwise the dense tensor
/// power is formed (subject to the memory budget).
double helstrom_success_tensor_power(const DensityMatrix &a, const DensityMatrix &b, unsigned copies);

/// U Z U^dag for `count` draws from the ensemble.
std::vector<ComplexMatrix> shadow_observable_set(const CircuitEnsemble &ensemble, std::size_t count, Rng &rng);

// ---------------------------------------------------------------------------
// Diagnostics.

struct NodeDiagnostics {
    std::string path;
    unsigned depth = 0;
    double p0 = 0.0;
    double mixture_likelihood = 1.0;  // L(u) over the sub-ensemble
    Estimate g;                       // G_u(U) = E_{p0}[delta^2]^{1/2}
    Estimate phi;                     // phi^{U,V}, independent U, V
    Estimate k_stat;                  // E_{p0}[(delta^U + delta^V)^2]
};

struct DiagnosticsRecord {
    std::vector<NodeDiagnostics> nodes;
    double chain_lhs = 0.0;  // KL(mixture || p0)
    double chain_rhs = 0.0;
    std::vector<double> chain_terms;  // per depth
    bool chain_holds = true;
};

/// Per-node Monte Carlo diagnostics over `mc_ensemble` and the exact chain
/// bound with ensemble expectations over the finite sub-ensemble.
DiagnosticsRecord adaptive_diagnostics(const StrategyTree &tree, double epsilon, const CircuitEnsemble &sub_ensemble,
                                       const CircuitEnsemble &mc_ensemble, std::size_t n_samples, Rng &rng);

/// Exact chain bound only (no Monte Carlo).
DiagnosticsRecord chain_bound(const StrategyTree &tree, double epsilon, const CircuitEnsemble &sub_ensemble);

struct IngsterReport {
    double lhs = 0.0;  // chi^2(mixture || p0)
    double rhs = 0.0;  // max_t E[(1 + phi_t)^N] - 1
    bool holds = true;
};

/// Requires a nonadaptive tree (ArgumentError otherwise).
IngsterReport ingster_bound_check(const StrategyTree &tree, double epsilon, const CircuitEnsemble &sub_ensemble);

/// U -> G_u(U) for a node's outcomes; Lipschitz constant
/// 2 eps k (1 + eps^2)^{(k-1)/2} / sqrt(d).
LipschitzFunction g_function(const PovmNode &node, double epsilon);

struct ScalingReport {
    std::vector<double> grid;
    std::vector<double> values;
    PowerLawFit fit;
};

/// Fits log(quantity(x)) against log(x) over the grid (at least 3 points).
ScalingReport scaling_study(const std::function<double(double)> &quantity, const std::vector<double> &grid);

}  // namespace replab

#endif  // REPLAB_TASKS_HPP
