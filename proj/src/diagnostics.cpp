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

#include "replab/error.hpp"
#include "replab/parallel.hpp"
#include "replab/tasks.hpp"

namespace replab {

namespace {

struct FiniteMembers {
    std::vector<ComplexMatrix> observables;
    std::vector<double> weights;  // normalized
    std::vector<DensityMatrix> states;
};

FiniteMembers finite_members(const CircuitEnsemble &e, double epsilon, const char *what) {
    if (!e.finite_support()) throw ArgumentError(std::string(what) + ": sub-ensemble must have finite support");
    FiniteMembers f;
    double total = 0.0;
    for (double w : e.weights()) total += w;
    for (std::size_t i = 0; i < e.members().size(); ++i) {
        f.observables.push_back(rotated_z(e.members()[i]));
        f.weights.push_back(e.weights()[i] / total);
        f.states.push_back(build_state(e.members()[i], epsilon).rho);
    }
    return f;
}

// delta[i][v] for every member i at `node`.
std::vector<std::vector<double>> node_deltas(const PovmNode &node, const std::vector<ComplexMatrix> &observables,
                                             double epsilon) {
    std::vector<std::vector<double>> out(observables.size(), std::vector<double>(node.outcomes.size()));
    for (std::size_t i = 0; i < observables.size(); ++i) {
        for (std::size_t v = 0; v < node.outcomes.size(); ++v) {
            out[i][v] = delta_perturbation(node.outcomes[v].psi, observables[i], epsilon, node.k);
        }
    }
    return out;
}

double null_probability(const TreePosition &pos) {
    double p = 1.0;
    for (const auto &s : pos.steps) p *= s.node->outcomes[static_cast<std::size_t>(s.outcome)].weight;
    return p;
}

std::vector<double> member_likelihoods(const TreePosition &pos, const std::vector<ComplexMatrix> &observables,
                                       double epsilon) {
    std::vector<double> l(observables.size(), 1.0);
    for (const auto &s : pos.steps) {
        const auto &psi = s.node->outcomes[static_cast<std::size_t>(s.outcome)].psi;
        for (std::size_t i = 0; i < observables.size(); ++i) l[i] *= 1.0 + delta_perturbation(psi, observables[i], epsilon, s.node->k);
    }
    return l;
}

}  // namespace

DiagnosticsRecord chain_bound(const StrategyTree &tree, double epsilon, const CircuitEnsemble &sub_ensemble) {
    const FiniteMembers f = finite_members(sub_ensemble, epsilon, "chain_bound");
    DiagnosticsRecord rec;
    const auto p0 = transcript_distribution(tree, DensityMatrix::maximally_mixed(tree.d()));
    const auto p1 = mixture_transcript_distribution(tree, f.states, f.weights);
    rec.chain_lhs = kl_divergence(p1, p0);

    for (unsigned t = 0; t < tree.depth(); ++t) {
        std::vector<double> terms;
        for (const auto &pos : positions_at_depth(tree, t)) {
            const auto lik = member_likelihoods(pos, f.observables, epsilon);
            double l_mix = 0.0;
            for (std::size_t i = 0; i < lik.size(); ++i) l_mix += f.weights[i] * lik[i];
            if (l_mix <= 0.0) continue;  // unreachable under the alternative
            const auto delta = node_deltas(*pos.node, f.observables, epsilon);
            // sum_ij w_i w_j L_i L_j phi_ij = sum_v w_v (sum_i w_i L_i delta_i(v))^2
            double inner = 0.0;
            for (std::size_t v = 0; v < pos.node->outcomes.size(); ++v) {
                double s = 0.0;
                for (std::size_t i = 0; i < lik.size(); ++i) s += f.weights[i] * lik[i] * delta[i][v];
                inner += pos.node->outcomes[v].weight * s * s;
            }
            terms.push_back(null_probability(pos) * inner / l_mix);
        }
        rec.chain_terms.push_back(compensated_sum(terms));
    }
    rec.chain_rhs = compensated_sum(rec.chain_terms);
    rec.chain_holds = rec.chain_lhs <= rec.chain_rhs + 1e-12;
    return rec;
}

DiagnosticsRecord adaptive_diagnostics(const StrategyTree &tree, double epsilon, const CircuitEnsemble &sub_ensemble,
                                       const CircuitEnsemble &mc_ensemble, std::size_t n_samples, Rng &rng) {
    if (n_samples < 2) throw ArgumentError("adaptive_diagnostics: need at least two samples");
    if (mc_ensemble.dim() != tree.d()) throw ArgumentError("adaptive_diagnostics: ensemble dimension differs from the tree's");
    DiagnosticsRecord rec = chain_bound(tree, epsilon, sub_ensemble);
    const FiniteMembers f = finite_members(sub_ensemble, epsilon, "adaptive_diagnostics");

    std::vector<ComplexMatrix> us(n_samples), vs(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        us[i] = rotated_z(mc_ensemble.sample(rng));
        vs[i] = rotated_z(mc_ensemble.sample(rng));
    }

    std::vector<TreePosition> positions;
    for (unsigned t = 0; t < tree.depth(); ++t) {
        for (auto &p : positions_at_depth(tree, t)) positions.push_back(std::move(p));
    }
    rec.nodes.resize(positions.size());
    parallel_for(positions.size(), [&](std::size_t idx) {
        const auto &pos = positions[idx];
        const PovmNode &node = *pos.node;
        NodeDiagnostics nd;
        nd.path = path_string(pos.path);
        nd.depth = static_cast<unsigned>(pos.path.size());
        nd.p0 = null_probability(pos);
        const auto lik = member_likelihoods(pos, f.observables, epsilon);
        nd.mixture_likelihood = 0.0;
        for (std::size_t i = 0; i < lik.size(); ++i) nd.mixture_likelihood += f.weights[i] * lik[i];

        std::vector<double> g(n_samples), phi(n_samples), kst(n_samples);
        for (std::size_t s = 0; s < n_samples; ++s) {
            double gg = 0.0, pp = 0.0, kk = 0.0;
            for (const auto &o : node.outcomes) {
                const double du = delta_perturbation(o.psi, us[s], epsilon, node.k);
                const double dv = delta_perturbation(o.psi, vs[s], epsilon, node.k);
                gg += o.weight * du * du;
                pp += o.weight * du * dv;
                kk += o.weight * (du + dv) * (du + dv);
            }
            g[s] = std::sqrt(gg);
            phi[s] = pp;
            kst[s] = kk;
        }
        nd.g = mean_estimate(g);
        nd.phi = mean_estimate(phi);
        nd.k_stat = mean_estimate(kst);
        rec.nodes[idx] = std::move(nd);
    });
    return rec;
}

IngsterReport ingster_bound_check(const StrategyTree &tree, double epsilon, const CircuitEnsemble &sub_ensemble) {
    if (!tree.nonadaptive()) throw ArgumentError("ingster_bound_check: tree is adaptive");
    const FiniteMembers f = finite_members(sub_ensemble, epsilon, "ingster_bound_check");
    IngsterReport rep;
    const auto p0 = transcript_distribution(tree, DensityMatrix::maximally_mixed(tree.d()));
    const auto p1 = mixture_transcript_distribution(tree, f.states, f.weights);
    rep.lhs = chi_squared(p1, p0);

    const std::size_t m = f.observables.size();
    std::vector<int> path;
    double worst = -1.0;
    for (unsigned t = 0; t < tree.depth(); ++t) {
        const PovmNode &node = tree.node_at(path);
        const auto delta = node_deltas(node, f.observables, epsilon);
        std::vector<double> terms;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                double phi = 0.0;
                for (std::size_t v = 0; v < node.outcomes.size(); ++v) phi += node.outcomes[v].weight * delta[i][v] * delta[j][v];
                terms.push_back(f.weights[i] * f.weights[j] * std::pow(1.0 + phi, tree.depth()));
            }
        }
        worst = std::max(worst, compensated_sum(terms) - 1.0);
        path.push_back(0);
    }
    rep.rhs = worst;
    rep.holds = rep.lhs <= rep.rhs + 1e-12;
    return rep;
}

LipschitzFunction g_function(const PovmNode &node, double epsilon) {
    LipschitzFunction fn;
    fn.name = "G_u";
    fn.dim = node.d;
    auto shared = std::make_shared<const PovmNode>(node);
    fn.f = [shared, epsilon](const UnitaryMatrix &u) {
        const ComplexMatrix obs = rotated_z(u);
        double acc = 0.0;
        for (const auto &o : shared->outcomes) {
            const double x = delta_perturbation(o.psi, obs, epsilon, shared->k);
            acc += o.weight * x * x;
        }
        return std::sqrt(acc);
    };
    fn.lipschitz = 2.0 * epsilon * node.k * std::pow(1.0 + epsilon * epsilon, 0.5 * (node.k - 1.0)) /
                   std::sqrt(static_cast<double>(node.d));
    return fn;
}

}  // namespace replab
