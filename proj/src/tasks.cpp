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


#include "replab/tasks.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>

#include <json.hpp>

#include "replab/error.hpp"
#include "replab/parallel.hpp"
#include "replab/permutation.hpp"
#include "replab/weingarten.hpp"

namespace replab {

namespace {

Index replica_dim(Index d, unsigned k, const char *what) {
    return static_cast<Index>(checked_pow(static_cast<std::size_t>(d), k, what));
}

void require_power_of_two(Index d, const char *what) {
    if (d < 2 || !std::has_single_bit(static_cast<std::uint64_t>(d))) {
        throw ArgumentError(std::string(what) + ": local dimension must be a power of two");
    }
}

std::vector<unsigned> mask_slots(unsigned mask, unsigned offset = 0) {
    std::vector<unsigned> out;
    for (unsigned s = 0; mask >> s; ++s) {
        if ((mask >> s) & 1u) out.push_back(s + offset);
    }
    return out;
}

bool parity_matches(unsigned size, Parity parity) {
    if (size == 0) return false;
    return (size % 2 == 1) == (parity == Parity::Odd);
}

// coeff[rank s] = sum_t Wg(s t^-1, d) tr(Z^{(x)m} P_t). Only permutations whose
// cycles all have even length contribute, each with d^{#t}.
std::shared_ptr<const std::vector<double>> twirl_coefficients(unsigned m, Index d) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, Index>, std::shared_ptr<const std::vector<double>>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({m, d});
        if (it != cache.end()) return it->second;
    }
    const auto table = weingarten_table(m, static_cast<unsigned>(d));
    const auto perms = enumerate_sym(m);
    std::vector<std::pair<Permutation, double>> contributing;
    for (const auto &t : perms) {
        if (t.all_cycles_even()) contributing.emplace_back(t.inverse(), std::pow(static_cast<double>(d), t.cycle_count()));
    }
    auto coeff = std::make_shared<std::vector<double>>(perms.size(), 0.0);
    for (const auto &s : perms) {
        double acc = 0.0;
        for (const auto &[t_inv, b] : contributing) acc += table->value(s * t_inv) * b;
        (*coeff)[s.rank()] = acc;
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::make_pair(m, d), coeff).first->second;
}

// E_Haar <v| O^{(x)m} on `slots` |v> for O = U Z U^dag.
double haar_slot_expectation(const ComplexVector &v, Index d, unsigned total, const std::vector<unsigned> &slots) {
    const auto m = static_cast<unsigned>(slots.size());
    if (m == 0) return v.squaredNorm();
    if (static_cast<Index>(m) > d) {
        throw UnsupportedRegimeError("exact Haar moment of order " + std::to_string(m) + " needs d >= " +
                                     std::to_string(m));
    }
    const auto coeff = twirl_coefficients(m, d);
    Complex acc = 0.0;
    for (const auto &s : enumerate_sym(m)) {
        const double c = (*coeff)[s.rank()];
        if (c == 0.0) continue;
        acc += c * v.dot(apply_permutation(s.inverse(), static_cast<unsigned>(d), total, slots, v));
    }
    return acc.real();
}

void require_epsilon(double epsilon, unsigned k, const char *what) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0 / (3.0 * k) + 1e-12)) {
        throw ArgumentError(std::string(what) + ": epsilon must lie in [0, 1/(3k)]");
    }
}

}  // namespace

PhiOperators build_phi_operators(const UnitaryMatrix &u, double epsilon, unsigned k) {
    if (k == 0 || k > kMaxPhiReplicas) throw ArgumentError("build_phi_operators: k must lie in 1..4");
    const Index d = u.dim();
    const Index dim = replica_dim(d, k, "build_phi_operators");
    require_matrix_budget(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim), "build_phi_operators");
    const ComplexMatrix obs = rotated_z(u);
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    PhiOperators out{k, epsilon, ComplexMatrix::Zero(dim, dim), ComplexMatrix::Zero(dim, dim)};
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        ComplexMatrix term = ((mask >> 0) & 1u) ? obs : id;
        for (unsigned s = 1; s < k; ++s) term = tensor_product(term, ((mask >> s) & 1u) ? obs : id);
        const int size = std::popcount(mask);
        (size % 2 ? out.phi1 : out.phi0) += std::pow(epsilon, size) * term;
    }
    return out;
}

double phi_expectation(const ComplexVector &psi, const ComplexMatrix &observable, double epsilon, unsigned k,
                       Parity parity) {
    if (k == 0 || k > kMaxPhiReplicas) throw ArgumentError("phi_expectation: k must lie in 1..4");
    double acc = 0.0;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        const auto size = static_cast<unsigned>(std::popcount(mask));
        if (!parity_matches(size, parity)) continue;
        ComplexVector v = psi;
        for (unsigned s : mask_slots(mask)) v = apply_on_slot(observable, s, k, v);
        acc += std::pow(epsilon, size) * psi.dot(v).real();
    }
    return acc;
}

double first_moment_exact(const ComplexVector &psi, Index d, unsigned k, const std::vector<unsigned> &subset) {
    require_power_of_two(d, "first_moment_exact");
    if (psi.size() != replica_dim(d, k, "first_moment_exact")) throw ArgumentError("first_moment_exact: psi has wrong size");
    for (unsigned s : subset) {
        if (s >= k) throw ArgumentError("first_moment_exact: slot out of range");
    }
    return haar_slot_expectation(psi, d, k, subset);
}

double expected_delta_exact(const ComplexVector &psi, Index d, unsigned k, double epsilon) {
    if (k == 0 || k > kMaxPhiReplicas) throw ArgumentError("expected_delta_exact: k must lie in 1..4");
    double acc = 0.0;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        acc += std::pow(epsilon, std::popcount(mask)) * first_moment_exact(psi, d, k, mask_slots(mask));
    }
    return acc;
}

double second_moment_exact(const ComplexVector &psi, Index d, unsigned k, double epsilon, Parity parity) {
    if (k == 0 || k > kMaxExactReplicas) throw UnsupportedRegimeError("second_moment_exact: supported for k <= 3");
    require_power_of_two(d, "second_moment_exact");
    const Index dim = replica_dim(d, k, "second_moment_exact");
    if (psi.size() != dim) throw ArgumentError("second_moment_exact: psi has wrong size");
    const unsigned max_order = 2 * ((parity == Parity::Odd) ? (k % 2 ? k : k - 1) : (k % 2 ? k - 1 : k));
    if (static_cast<Index>(max_order) > d) {
        throw UnsupportedRegimeError("second_moment_exact: needs d >= " + std::to_string(max_order));
    }
    require_matrix_budget(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), 1, "second_moment_exact");
    // Two copies of psi; the first occupies slots 0..k-1.
    ComplexVector doubled(dim * dim);
    for (Index i = 0; i < dim; ++i) doubled.segment(i * dim, dim) = psi(i) * psi;

    double acc = 0.0;
    for (unsigned a = 1; a < (1u << k); ++a) {
        if (!parity_matches(static_cast<unsigned>(std::popcount(a)), parity)) continue;
        for (unsigned b = 1; b < (1u << k); ++b) {
            if (!parity_matches(static_cast<unsigned>(std::popcount(b)), parity)) continue;
            std::vector<unsigned> slots = mask_slots(a);
            for (unsigned s : mask_slots(b, k)) slots.push_back(s);
            acc += std::pow(epsilon, static_cast<double>(slots.size())) *
                   haar_slot_expectation(doubled, d, 2 * k, slots);
        }
    }
    return acc;
}

Estimate second_moment_mc(const ComplexVector &psi, double epsilon, unsigned k, Parity parity,
                          const CircuitEnsemble &ensemble, std::size_t n_samples, Rng &rng) {
    if (n_samples < 2) throw ArgumentError("second_moment_mc: need at least two samples");
    if (psi.size() != replica_dim(ensemble.dim(), k, "second_moment_mc")) throw ArgumentError("second_moment_mc: psi has wrong size");
    std::vector<double> values(n_samples);
    const std::size_t blocks = (n_samples + kJackknifeBlock - 1) / kJackknifeBlock;
    const Rng base(rng.next_u64());
    parallel_for(blocks, [&](std::size_t b) {
        Rng r = base.stream(b);
        const std::size_t hi = std::min(n_samples, (b + 1) * kJackknifeBlock);
        for (std::size_t i = b * kJackknifeBlock; i < hi; ++i) {
            const double x = phi_expectation(psi, rotated_z(ensemble.sample(r)), epsilon, k, parity);
            values[i] = x * x;
        }
    });
    return mean_estimate(values);
}

double expected_pairwise_correlation_exact(const PovmNode &node, double epsilon) {
    std::vector<double> terms;
    terms.reserve(node.outcomes.size());
    for (const auto &o : node.outcomes) {
        const double e = expected_delta_exact(o.psi, node.d, node.k, epsilon);
        terms.push_back(o.weight * e * e);
    }
    return compensated_sum(terms);
}

// ---------------------------------------------------------------------------

std::vector<ComplexVector> tree_vectors(const StrategyTree &tree) {
    std::vector<ComplexVector> out;
    for (const PovmNode *n : tree.distinct_nodes()) {
        for (const auto &o : n->outcomes) out.push_back(o.psi);
    }
    return out;
}

TvBoundReport tv_bound_rhs(const std::vector<ComplexVector> &vectors, Index d, unsigned k, unsigned rounds,
                           double epsilon) {
    require_epsilon(epsilon, k, "tv_bound_rhs");
    if (vectors.empty()) throw ArgumentError("tv_bound_rhs: no measurement vectors");
    TvBoundReport r;
    r.vectors = vectors.size();
    r.rounds = rounds;
    std::vector<double> brackets(vectors.size());
    parallel_for(vectors.size(), [&](std::size_t i) {
        const double odd = second_moment_exact(vectors[i], d, k, epsilon, Parity::Odd);
        const double even = k >= 2 ? second_moment_exact(vectors[i], d, k, epsilon, Parity::Even) : 0.0;
        brackets[i] = odd + 2.0 * std::sqrt(std::max(0.0, even));
    });
    r.max_bracket = *std::max_element(brackets.begin(), brackets.end());
    r.value = 2.0 * rounds * r.max_bracket;
    return r;
}

TvBoundReport tv_bound_rhs(const StrategyTree &tree, double epsilon) {
    return tv_bound_rhs(tree_vectors(tree), tree.d(), tree.k(), tree.depth(), epsilon);
}

TvBoundReport tv_bound_rhs_mc(const StrategyTree &tree, double epsilon, const CircuitEnsemble &ensemble,
                              std::size_t n_samples, Rng &rng) {
    require_epsilon(epsilon, tree.k(), "tv_bound_rhs_mc");
    if (ensemble.dim() != tree.d()) throw ArgumentError("tv_bound_rhs_mc: ensemble dimension differs from the tree's");
    // Finite ensembles are averaged exactly; otherwise one shared sample set.
    std::vector<ComplexMatrix> observables;
    std::vector<double> weights;
    if (ensemble.finite_support()) {
        for (const auto &u : ensemble.members()) observables.push_back(rotated_z(u));
        weights = ensemble.weights();
    } else {
        if (n_samples == 0) throw ArgumentError("tv_bound_rhs_mc: need at least one sample");
        for (std::size_t i = 0; i < n_samples; ++i) observables.push_back(rotated_z(ensemble.sample(rng)));
        weights.assign(n_samples, 1.0);
    }
    double wsum = 0.0;
    for (double w : weights) wsum += w;

    const auto vectors = tree_vectors(tree);
    std::vector<double> brackets(vectors.size());
    parallel_for(vectors.size(), [&](std::size_t i) {
        std::vector<double> odd(observables.size()), even(observables.size());
        for (std::size_t j = 0; j < observables.size(); ++j) {
            const double a = phi_expectation(vectors[i], observables[j], epsilon, tree.k(), Parity::Odd);
            const double b = tree.k() >= 2 ? phi_expectation(vectors[i], observables[j], epsilon, tree.k(), Parity::Even) : 0.0;
            odd[j] = weights[j] * a * a / wsum;
            even[j] = weights[j] * b * b / wsum;
        }
        brackets[i] = compensated_sum(odd) + 2.0 * std::sqrt(std::max(0.0, compensated_sum(even)));
    });
    TvBoundReport r;
    r.vectors = vectors.size();
    r.rounds = tree.depth();
    r.max_bracket = *std::max_element(brackets.begin(), brackets.end());
    r.value = 2.0 * tree.depth() * r.max_bracket;
    return r;
}

StrategyTree random_strategy_tree(Index d, unsigned k, unsigned depth, std::size_t branching, bool adaptive, Rng &rng) {
    if (depth == 0) throw ArgumentError("random_strategy_tree: depth must be positive");
    const Index dim = replica_dim(d, k, "random_strategy_tree");
    if (branching < static_cast<std::size_t>(dim)) throw ArgumentError("random_strategy_tree: branching must be at least d^k");
    if (!adaptive) {
        std::vector<std::vector<PovmElement>> rounds;
        for (unsigned r = 0; r < depth; ++r) rounds.push_back(random_rank1_povm(dim, branching, rng));
        return StrategyTree::nonadaptive(rounds, d, k);
    }
    const std::uint64_t seed = rng.next_u64();
    auto builder = [seed, dim, branching](const std::vector<int> &path) {
        std::uint64_t key = 0xcbf29ce484222325ULL;  // FNV-1a over the path
        for (int v : path) {
            key ^= static_cast<std::uint64_t>(v) + 1;
            key *= 0x100000001b3ULL;
        }
        key ^= path.size();
        Rng r(seed, key);
        return random_rank1_povm(dim, branching, r);
    };
    return StrategyTree::build(builder, depth, d, k);
}

// ---------------------------------------------------------------------------

TaskInstance TaskInstance::rqc(unsigned n, unsigned k, double epsilon, unsigned rounds, CircuitEnsemble ensemble,
                               std::uint64_t seed) {
    if (k == 0 || k > kMaxPhiReplicas) throw ArgumentError("task: k must lie in 1..4");
    if (rounds == 0) throw ArgumentError("task: need at least one round");
    if (ensemble.dim() != (Index{1} << n)) throw ArgumentError("task: ensemble dimension must be 2^n");
    if (!(epsilon > 0.0)) throw ArgumentError("task: epsilon must be positive");
    require_epsilon(epsilon, k, "task");
    TaskInstance t;
    t.kind = TaskKind::Rqc;
    t.n = n;
    t.d = ensemble.dim();
    t.k = k;
    t.epsilon = epsilon;
    t.rounds = rounds;
    t.ensemble = std::move(ensemble);
    t.seed = seed;
    return t;
}

TaskInstance TaskInstance::mixedness(unsigned n, unsigned k, double epsilon, unsigned rounds, std::uint64_t seed) {
    if (k == 0 || k > kMaxPhiReplicas) throw ArgumentError("task: k must lie in 1..4");
    if (rounds == 0) throw ArgumentError("task: need at least one round");
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ArgumentError("task: epsilon must lie in (0, 1]");
    TaskInstance t;
    t.kind = TaskKind::Mixedness;
    t.n = n;
    t.ensemble = CircuitEnsemble::haar(n);
    t.d = t.ensemble.dim();
    t.k = k;
    t.epsilon = epsilon;
    t.rounds = rounds;
    t.seed = seed;
    return t;
}

std::string TaskInstance::to_json() const {
    nlohmann::json j;
    j["kind"] = kind == TaskKind::Rqc ? "rqc" : "mixedness";
    j["n"] = n;
    j["d"] = d;
    j["k"] = k;
    j["epsilon"] = epsilon;
    j["rounds"] = rounds;
    j["ensemble"] = nlohmann::json::parse(ensemble.to_json());
    j["seed"] = seed;
    return j.dump();
}

// ---------------------------------------------------------------------------

HelstromTournament::HelstromTournament(std::vector<DensityMatrix> candidates) : candidates_(std::move(candidates)) {
    if (candidates_.empty()) throw ArgumentError("tournament: no candidates");
    const Index d = candidates_.front().dim();
    for (const auto &c : candidates_) {
        if (c.dim() != d) throw ArgumentError("tournament: candidates differ in dimension");
    }
    const std::size_t n = candidates_.size();
    matches_.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Match m;
            m.projector = helstrom_measurement(candidates_[i], candidates_[j]).projector;
            const double ti = (m.projector * candidates_[i].matrix()).trace().real();
            const double tj = (m.projector * candidates_[j].matrix()).trace().real();
            m.mid = 0.5 * (ti + tj);
            m.i_above = ti >= tj;
            matches_.push_back(std::move(m));
        }
    }
}

const HelstromTournament::Match &HelstromTournament::match(std::size_t i, std::size_t j) const {
    const std::size_t n = candidates_.size();
    return matches_[i * n - i * (i + 1) / 2 + (j - i - 1)];
}

std::size_t HelstromTournament::select(const DensityMatrix &unknown, std::size_t copies_per_match, Rng &rng) const {
    if (copies_per_match == 0) throw ArgumentError("tournament: need at least one copy per match");
    if (unknown.dim() != candidates_.front().dim()) throw ArgumentError("tournament: unknown state has wrong dimension");
    std::vector<std::size_t> alive(candidates_.size());
    for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;
    while (alive.size() > 1) {
        std::vector<std::size_t> next;
        for (std::size_t a = 0; a + 1 < alive.size(); a += 2) {
            const std::size_t i = alive[a], j = alive[a + 1];
            const Match &m = match(i, j);
            const double p = std::clamp((m.projector * unknown.matrix()).trace().real(), 0.0, 1.0);
            const double freq = static_cast<double>(rng.binomial(copies_per_match, p)) / static_cast<double>(copies_per_match);
            next.push_back(((freq >= m.mid) == m.i_above) ? i : j);
        }
        if (alive.size() % 2) next.push_back(alive.back());
        alive = std::move(next);
    }
    return alive.front();
}

std::size_t helstrom_tournament(const std::vector<DensityMatrix> &candidates, std::size_t copies_per_match,
                                const DensityMatrix &unknown, Rng &rng) {
    return HelstromTournament(candidates).select(unknown, copies_per_match, rng);
}

std::size_t tournament_copies(double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ArgumentError("tournament_copies: epsilon must lie in (0, 1]");
    return static_cast<std::size_t>(std::ceil(64.0 / (epsilon * epsilon) - 1e-9));
}

TournamentReport run_tournament(const CircuitEnsemble &ensemble, double epsilon, std::size_t alternatives,
                                std::size_t copies_per_match, std::size_t trials, Rng &rng) {
    if (trials == 0) throw ArgumentError("run_tournament: need at least one trial");
    std::vector<DensityMatrix> candidates{DensityMatrix::maximally_mixed(ensemble.dim())};
    for (std::size_t i = 0; i < alternatives; ++i) candidates.push_back(build_state(ensemble.sample(rng), epsilon).rho);
    const HelstromTournament tournament(candidates);
    const Rng base(rng.next_u64());
    std::vector<char> ok(trials, 0);
    parallel_for(trials, [&](std::size_t t) {
        Rng r = base.stream(t);
        const auto truth = static_cast<std::size_t>(r.uniform_int(candidates.size()));
        ok[t] = tournament.select(candidates[truth], copies_per_match, r) == truth;
    });
    TournamentReport rep;
    rep.candidates = candidates.size();
    rep.copies_per_match = copies_per_match;
    rep.trials = trials;
    rep.successes = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
    rep.success_rate = static_cast<double>(rep.successes) / static_cast<double>(trials);
    const Interval iv = wilson_interval(rep.successes, trials);
    rep.wilson_lo = iv.lo;
    rep.wilson_hi = iv.hi;
    return rep;
}

namespace {

struct SpectralPair {
    double a, b, multiplicity;
};

// Sum over compositions n of `copies` into the groups of
// multinomial(n) prod mult^n |prod a^n - prod b^n|.
void accumulate_compositions(const std::vector<SpectralPair> &groups, std::size_t g, unsigned left, double coeff,
                             double pa, double pb, std::vector<double> &terms) {
    if (g + 1 == groups.size()) {
        const auto &s = groups[g];
        const double c = coeff * std::pow(s.multiplicity, left) / std::tgamma(left + 1.0);
        terms.push_back(c * std::abs(pa * std::pow(s.a, left) - pb * std::pow(s.b, left)));
        return;
    }
    const auto &s = groups[g];
    for (unsigned n = 0; n <= left; ++n) {
        const double c = coeff * std::pow(s.multiplicity, n) / std::tgamma(n + 1.0);
        accumulate_compositions(groups, g + 1, left - n, c, pa * std::pow(s.a, n), pb * std::pow(s.b, n), terms);
    }
}

}  // namespace

double helstrom_success_tensor_power(const DensityMatrix &a, const DensityMatrix &b, unsigned copies) {
    if (copies == 0) throw ArgumentError("helstrom_success_tensor_power: need at least one copy");
    if (a.dim() != b.dim()) throw ArgumentError("helstrom_success_tensor_power: dimension mismatch");
    const ComplexMatrix &ma = a.matrix();
    const ComplexMatrix &mb = b.matrix();
    const Index d = a.dim();
    if ((ma * mb - mb * ma).norm() <= 1e-10) {
        // Joint eigenbasis from a generic combination.
        const auto spec = hermitian_eig(ma + 0.6180339887498949 * mb);
        const ComplexMatrix &v = spec.vectors;
        const ComplexMatrix da = v.adjoint() * ma * v;
        const ComplexMatrix db = v.adjoint() * mb * v;
        const double off = (da - ComplexMatrix(da.diagonal().asDiagonal())).norm() +
                           (db - ComplexMatrix(db.diagonal().asDiagonal())).norm();
        if (off <= 1e-9) {
            std::vector<SpectralPair> groups;
            for (Index i = 0; i < d; ++i) {
                const double x = da(i, i).real(), y = db(i, i).real();
                auto it = std::find_if(groups.begin(), groups.end(), [&](const SpectralPair &s) {
                    return std::abs(s.a - x) <= 1e-12 && std::abs(s.b - y) <= 1e-12;
                });
                if (it == groups.end()) {
                    groups.push_back({x, y, 1.0});
                } else {
                    it->multiplicity += 1.0;
                }
            }
            const double count = std::tgamma(copies + groups.size()) / (std::tgamma(copies + 1.0) * std::tgamma(static_cast<double>(groups.size())));
            if (count > 1e7) throw ResourceError("helstrom_success_tensor_power: too many spectral compositions");
            std::vector<double> terms;
            accumulate_compositions(groups, 0, copies, std::tgamma(copies + 1.0), 1.0, 1.0, terms);
            return std::clamp(0.5 + 0.25 * compensated_sum(terms), 0.5, 1.0);
        }
    }
    const Index dim = replica_dim(d, copies, "helstrom_success_tensor_power");
    require_matrix_budget(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim), "helstrom_success_tensor_power");
    const ComplexMatrix diff = tensor_power(ma, copies) - tensor_power(mb, copies);
    return std::clamp(0.5 + 0.25 * schatten_norm(diff, Schatten::One), 0.5, 1.0);
}

std::vector<ComplexMatrix> shadow_observable_set(const CircuitEnsemble &ensemble, std::size_t count, Rng &rng) {
    std::vector<ComplexMatrix> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(rotated_z(ensemble.sample(rng)));
    return out;
}

ScalingReport scaling_study(const std::function<double(double)> &quantity, const std::vector<double> &grid) {
    if (grid.size() < 3) throw ArgumentError("scaling_study: need at least three grid points");
    ScalingReport r;
    r.grid = grid;
    for (double x : grid) r.values.push_back(quantity(x));
    r.fit = fit_power_law(r.grid, r.values);
    return r;
}

}  // namespace replab
