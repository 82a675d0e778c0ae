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


#include <algorithm>
#include <cmath>
#include <memory>

#include "replab/error.hpp"
#include "replab/parallel.hpp"
#include "replab/tasks.hpp"
#include "replab/weingarten.hpp"

namespace replab {

namespace {

Index joint_dim_of(Index d, unsigned k) { return static_cast<Index>(checked_pow(static_cast<std::size_t>(d), k, "strategy")); }

std::vector<ComplexVector> outcome_vectors(const std::vector<PovmElement> &outcomes) {
    std::vector<ComplexVector> out;
    out.reserve(outcomes.size());
    for (const auto &o : outcomes) out.push_back(o.psi);
    return out;
}

Strategy constant_strategy(std::string name, Index d, unsigned k, unsigned rounds, std::vector<PovmElement> outcomes) {
    Strategy s;
    s.name = std::move(name);
    s.d = d;
    s.k = k;
    s.rounds = rounds;
    s.nonadaptive = true;
    s.candidate_vectors = outcome_vectors(outcomes);
    auto shared = std::make_shared<const std::vector<PovmElement>>(std::move(outcomes));
    s.node = [shared](const std::vector<int> &) { return *shared; };
    return s;
}

}  // namespace

Strategy tree_strategy(const StrategyTree &tree, std::string name) {
    Strategy s;
    s.name = std::move(name);
    s.d = tree.d();
    s.k = tree.k();
    s.rounds = tree.depth();
    s.nonadaptive = tree.nonadaptive();
    s.candidate_vectors = tree_vectors(tree);
    auto shared = std::make_shared<const StrategyTree>(tree);
    s.node = [shared](const std::vector<int> &path) { return shared->node_at(path).outcomes; };
    return s;
}

Strategy standard_basis_strategy(Index d, unsigned k, unsigned rounds) {
    return constant_strategy("standard-basis", d, k, rounds, standard_basis_povm(d, k));
}

Strategy haar_basis_strategy(Index d, unsigned k, unsigned rounds, Rng &rng) {
    if (rounds == 0) throw ArgumentError("strategy: need at least one round");
    const Index dim = joint_dim_of(d, k);
    auto per_round = std::make_shared<std::vector<std::vector<PovmElement>>>();
    Strategy s;
    s.name = "haar-basis";
    s.d = d;
    s.k = k;
    s.rounds = rounds;
    s.nonadaptive = true;
    for (unsigned r = 0; r < rounds; ++r) {
        per_round->push_back(basis_povm(haar_sample(dim, rng).matrix()));
        for (const auto &o : per_round->back()) s.candidate_vectors.push_back(o.psi);
    }
    s.node = [per_round](const std::vector<int> &path) {
        if (path.size() >= per_round->size()) throw ArgumentError("strategy: path longer than the round count");
        return (*per_round)[path.size()];
    };
    return s;
}

Strategy greedy_adaptive_strategy(Index d, unsigned k, unsigned rounds, double epsilon,
                                  std::vector<UnitaryMatrix> reference, std::size_t random_bases, Rng &rng) {
    if (rounds == 0) throw ArgumentError("strategy: need at least one round");
    if (reference.empty()) throw ArgumentError("greedy strategy: empty reference set");
    const Index dim = joint_dim_of(d, k);

    struct State {
        std::vector<std::vector<PovmElement>> candidates;
        // delta[c][v][j]: perturbation of outcome v of candidate c under member j.
        std::vector<std::vector<std::vector<double>>> delta;
    };
    auto st = std::make_shared<State>();
    st->candidates.push_back(standard_basis_povm(d, k));
    for (std::size_t i = 0; i < random_bases; ++i) st->candidates.push_back(basis_povm(haar_sample(dim, rng).matrix()));

    std::vector<ComplexMatrix> observables;
    for (const auto &u : reference) {
        if (u.dim() != d) throw ArgumentError("greedy strategy: reference unitary has wrong dimension");
        observables.push_back(rotated_z(u));
    }
    for (const auto &c : st->candidates) {
        std::vector<std::vector<double>> per_outcome;
        for (const auto &o : c) {
            std::vector<double> row;
            for (const auto &obs : observables) row.push_back(delta_perturbation(o.psi, obs, epsilon, k));
            per_outcome.push_back(std::move(row));
        }
        st->delta.push_back(std::move(per_outcome));
    }

    Strategy s;
    s.name = "greedy-adaptive";
    s.d = d;
    s.k = k;
    s.rounds = rounds;
    s.nonadaptive = false;
    for (const auto &c : st->candidates) {
        for (const auto &o : c) s.candidate_vectors.push_back(o.psi);
    }
    const std::size_t members = reference.size();
    s.node = [st, members, rounds](const std::vector<int> &path) {
        if (path.size() >= rounds) throw ArgumentError("strategy: path longer than the round count");
        std::vector<double> lik(members, 1.0);
        for (std::size_t t = 0;; ++t) {
            double total = 0.0;
            for (double l : lik) total += l;
            std::size_t best = 0;
            double best_score = -1.0;
            for (std::size_t c = 0; c < st->candidates.size(); ++c) {
                double score = 0.0;
                for (std::size_t v = 0; v < st->candidates[c].size(); ++v) {
                    double mean = 0.0;
                    for (std::size_t j = 0; j < members; ++j) mean += lik[j] * st->delta[c][v][j];
                    mean /= total;
                    score += st->candidates[c][v].weight * mean * mean;
                }
                if (score > best_score) {
                    best_score = score;
                    best = c;
                }
            }
            if (t == path.size()) return st->candidates[best];
            const auto v = static_cast<std::size_t>(path[t]);
            if (v >= st->candidates[best].size()) throw ArgumentError("strategy: outcome out of range");
            for (std::size_t j = 0; j < members; ++j) lik[j] *= 1.0 + st->delta[best][v][j];
        }
    };
    return s;
}

Strategy helstrom_batch_strategy(Index d, unsigned k, unsigned rounds, double epsilon,
                                 const std::vector<UnitaryMatrix> &reference) {
    if (reference.empty()) throw ArgumentError("helstrom strategy: empty reference set");
    const Index dim = joint_dim_of(d, k);
    require_matrix_budget(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim), "helstrom strategy");
    ComplexMatrix mixture = ComplexMatrix::Zero(dim, dim);
    for (const auto &u : reference) mixture += tensor_power(build_state(u, epsilon).rho.matrix(), k);
    mixture /= static_cast<double>(reference.size());
    mixture = 0.5 * (mixture + mixture.adjoint());
    const auto h = helstrom_measurement(DensityMatrix(mixture), DensityMatrix::maximally_mixed(dim));
    const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
    return constant_strategy("helstrom-batch", d, k, rounds, refine_povm({h.projector, id - h.projector}));
}

StrategyTree strategy_tree(const Strategy &s) {
    if (s.nonadaptive) {
        std::vector<std::vector<PovmElement>> rounds;
        std::vector<int> path;
        for (unsigned r = 0; r < s.rounds; ++r) {
            rounds.push_back(s.node(path));
            path.push_back(0);
        }
        return StrategyTree::nonadaptive(rounds, s.d, s.k);
    }
    return StrategyTree::build(s.node, s.rounds, s.d, s.k);
}

SuccessReport run_strategy(const TaskInstance &task, const Strategy &strategy, std::size_t trials, Rng &rng,
                           std::size_t reference_size) {
    if (trials == 0) throw ArgumentError("run_strategy: need at least one trial");
    if (reference_size == 0) throw ArgumentError("run_strategy: empty reference set");
    if (strategy.d != task.d || strategy.k != task.k) throw ArgumentError("run_strategy: strategy shape differs from the task");
    if (strategy.rounds < task.rounds) throw ArgumentError("run_strategy: strategy has fewer rounds than the task");

    const Rng base(rng.next_u64());
    Rng ref_rng = base.stream(0);
    std::vector<ComplexMatrix> reference;
    for (std::size_t j = 0; j < reference_size; ++j) reference.push_back(rotated_z(task.ensemble.sample(ref_rng)));

    std::vector<char> ok(trials, 0);
    parallel_for(trials, [&](std::size_t i) {
        Rng r = base.stream(i + 1);
        const bool alternative = r.uniform() < 0.5;
        ComplexMatrix truth;
        if (alternative) truth = rotated_z(task.ensemble.sample(r));
        std::vector<double> lik(reference.size(), 1.0);
        std::vector<int> path;
        for (unsigned t = 0; t < task.rounds; ++t) {
            const auto outcomes = strategy.node(path);
            std::vector<double> cumulative(outcomes.size());
            double acc = 0.0;
            for (std::size_t v = 0; v < outcomes.size(); ++v) {
                double p = outcomes[v].weight;
                if (alternative) p *= 1.0 + delta_perturbation(outcomes[v].psi, truth, task.epsilon, task.k);
                acc += std::max(0.0, p);
                cumulative[v] = acc;
            }
            const double x = r.uniform() * acc;
            const auto v = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), x) - cumulative.begin());
            const std::size_t chosen = std::min(v, outcomes.size() - 1);
            for (std::size_t j = 0; j < reference.size(); ++j) {
                lik[j] *= 1.0 + delta_perturbation(outcomes[chosen].psi, reference[j], task.epsilon, task.k);
            }
            path.push_back(static_cast<int>(chosen));
        }
        double mean = 0.0;
        for (double l : lik) mean += l;
        mean /= static_cast<double>(lik.size());
        ok[i] = (mean > 1.0) == alternative;
    });

    SuccessReport rep;
    rep.strategy = strategy.name;
    rep.trials = trials;
    rep.successes = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
    rep.success_rate = static_cast<double>(rep.successes) / static_cast<double>(trials);
    const Interval iv = wilson_interval(rep.successes, trials);
    rep.wilson_lo = iv.lo;
    rep.wilson_hi = iv.hi;
    rep.advantage = 2.0 * rep.success_rate - 1.0;
    return rep;
}

}  // namespace replab
