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

#include "replab/tree.hpp"

#include <cmath>
#include <functional>
#include <json.hpp>
#include <map>
#include <sstream>
#include <unordered_map>

#include "replab/error.hpp"
#include "replab/parallel.hpp"
#include "replab/stats.hpp"

namespace replab {

Index PovmNode::joint_dim() const { return static_cast<Index>(checked_pow(static_cast<std::size_t>(d), k, "povm node")); }

double povm_residual(const std::vector<PovmElement> &outcomes, Index joint_dim) {
    ComplexMatrix acc = ComplexMatrix::Zero(joint_dim, joint_dim);
    for (const auto &o : outcomes) {
        if (o.psi.size() != joint_dim) throw ArgumentError("POVM outcome vector has the wrong dimension");
        acc += (o.weight * static_cast<double>(joint_dim)) * (o.psi * o.psi.adjoint());
    }
    return (acc - ComplexMatrix::Identity(joint_dim, joint_dim)).norm();
}

void validate_povm(const PovmNode &node) {
    const Index dim = node.joint_dim();
    if (node.outcomes.empty()) throw ValidationError("POVM node '" + node.id + "' has no outcomes", 1.0);
    for (const auto &o : node.outcomes) {
        if (!(o.weight > 0.0) || !std::isfinite(o.weight)) {
            throw ValidationError("POVM node '" + node.id + "' has a nonpositive weight", o.weight);
        }
        if (o.psi.size() != dim) throw ValidationError("POVM node '" + node.id + "' has a vector of the wrong dimension");
        const double norm_err = std::abs(o.psi.norm() - 1.0);
        if (norm_err > kPovmTol) throw ValidationError("POVM node '" + node.id + "' has an unnormalized vector", norm_err);
    }
    const double residual = povm_residual(node.outcomes, dim);
    if (residual > kPovmTol) throw ValidationError("POVM node '" + node.id + "' is not complete", residual);
}

std::vector<PovmElement> refine_povm(const std::vector<ComplexMatrix> &elements) {
    if (elements.empty()) throw ArgumentError("refine_povm: no elements");
    const Index dim = elements[0].rows();
    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    for (const auto &e : elements) {
        if (e.rows() != dim || e.cols() != dim) throw ArgumentError("refine_povm: elements differ in dimension");
        sum += e;
    }
    if ((sum - ComplexMatrix::Identity(dim, dim)).norm() > kPovmTol) throw ArgumentError("refine_povm: elements do not sum to I");
    std::vector<PovmElement> out;
    for (std::size_t idx = 0; idx < elements.size(); ++idx) {
        const ComplexMatrix h = 0.5 * (elements[idx] + elements[idx].adjoint());
        if ((h - elements[idx]).norm() > kPovmTol) throw ArgumentError("refine_povm: element is not Hermitian");
        const HermitianSpectrum spec = hermitian_eig(h);
        if (spec.values.size() > 0 && spec.values(0) < -kPsdTol) throw ArgumentError("refine_povm: element is not PSD");
        for (Index i = 0; i < dim; ++i) {
            const double lam = spec.values(i);
            if (lam <= 1e-12) continue;
            out.push_back(PovmElement{lam / static_cast<double>(dim), spec.vectors.col(i), static_cast<int>(idx)});
        }
    }
    return out;
}

std::vector<PovmElement> basis_povm(const ComplexMatrix &basis) {
    const Index dim = basis.rows();
    if (basis.cols() != dim) throw ArgumentError("basis_povm: basis must be square");
    if ((basis.adjoint() * basis - ComplexMatrix::Identity(dim, dim)).norm() > 1e-9) {
        throw ArgumentError("basis_povm: columns are not orthonormal");
    }
    std::vector<PovmElement> out;
    for (Index i = 0; i < dim; ++i) out.push_back(PovmElement{1.0 / static_cast<double>(dim), basis.col(i), -1});
    return out;
}

std::vector<PovmElement> standard_basis_povm(Index d, unsigned k) {
    const auto dim = static_cast<Index>(checked_pow(static_cast<std::size_t>(d), k, "standard_basis_povm"));
    return basis_povm(ComplexMatrix::Identity(dim, dim));
}

std::vector<PovmElement> swap_eigenbasis_povm(Index d) {
    const Index dim = d * d;
    ComplexMatrix basis = ComplexMatrix::Zero(dim, dim);
    Index col = 0;
    const double r = M_SQRT1_2;
    for (Index i = 0; i < d; ++i) basis(i * d + i, col++) = 1.0;
    for (Index i = 0; i < d; ++i) {
        for (Index j = i + 1; j < d; ++j) {
            basis(i * d + j, col) = r;
            basis(j * d + i, col++) = r;
            basis(i * d + j, col) = r;
            basis(j * d + i, col++) = -r;
        }
    }
    return basis_povm(basis);
}

std::vector<PovmElement> random_rank1_povm(Index dim, std::size_t m, Rng &rng) {
    if (m < static_cast<std::size_t>(dim)) throw ArgumentError("random_rank1_povm: need at least dim outcomes");
    std::vector<ComplexVector> vs;
    ComplexMatrix s = ComplexMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < m; ++i) {
        vs.push_back(rng.gaussian_vector(dim));
        s += vs.back() * vs.back().adjoint();
    }
    const HermitianSpectrum spec = hermitian_eig(s);
    if (spec.values(0) < 1e-8) throw InternalError("random_rank1_povm: frame operator is singular");
    const ComplexMatrix inv_sqrt =
        spec.vectors * spec.values.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() * spec.vectors.adjoint();
    std::vector<PovmElement> out;
    for (const auto &v : vs) {
        const ComplexVector u = inv_sqrt * v;
        const double n2 = u.squaredNorm();
        out.push_back(PovmElement{n2 / static_cast<double>(dim), u / std::sqrt(n2), -1});
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

bool same_outcomes(const PovmNode &a, const PovmNode &b) {
    if (a.outcomes.size() != b.outcomes.size()) return false;
    for (std::size_t i = 0; i < a.outcomes.size(); ++i) {
        if (std::abs(a.outcomes[i].weight - b.outcomes[i].weight) > 1e-12) return false;
        if ((a.outcomes[i].psi - b.outcomes[i].psi).norm() > 1e-12) return false;
    }
    return true;
}

}  // namespace

StrategyTree::StrategyTree(std::shared_ptr<const PovmNode> root, unsigned depth, std::size_t max_branching,
                           unsigned max_depth)
    : root_(std::move(root)), depth_(depth) {
    if (!root_) throw ArgumentError("strategy tree needs a root");
    if (depth_ == 0) throw ArgumentError("strategy tree depth must be positive");
    if (depth_ > max_depth) throw ResourceError("strategy tree depth exceeds the cap");
    std::unordered_map<const PovmNode *, unsigned> seen;
    std::vector<std::vector<const PovmNode *>> by_depth(depth_);
    std::function<void(const PovmNode *, unsigned)> visit = [&](const PovmNode *node, unsigned t) {
        auto it = seen.find(node);
        if (it != seen.end()) {
            if (it->second != t) throw ArgumentError("strategy tree: shared node appears at two depths");
            return;
        }
        seen.emplace(node, t);
        by_depth[t].push_back(node);
        if (node->k != root_->k || node->d != root_->d) throw ArgumentError("strategy tree: nodes disagree on (d, k)");
        if (node->outcomes.size() > max_branching) throw ResourceError("strategy tree: node exceeds the branching cap");
        validate_povm(*node);
        if (node->children.size() != node->outcomes.size()) {
            throw ArgumentError("strategy tree: node '" + node->id + "' needs one child slot per outcome");
        }
        for (const auto &c : node->children) {
            if (t + 1 == depth_) {
                if (c) throw ArgumentError("strategy tree: a root-to-leaf path is longer than the depth");
            } else {
                if (!c) throw ArgumentError("strategy tree: a root-to-leaf path is shorter than the depth");
                visit(c.get(), t + 1);
            }
        }
    };
    visit(root_.get(), 0);
    nonadaptive_ = true;
    for (const auto &level : by_depth) {
        for (const PovmNode *n : level) nonadaptive_ = nonadaptive_ && same_outcomes(*n, *level.front());
    }
}

StrategyTree StrategyTree::nonadaptive(const std::vector<std::vector<PovmElement>> &rounds, Index d, unsigned k) {
    if (rounds.empty()) throw ArgumentError("nonadaptive tree needs at least one round");
    std::shared_ptr<const PovmNode> next;
    for (std::size_t r = rounds.size(); r-- > 0;) {
        auto node = std::make_shared<PovmNode>();
        node->id = "round" + std::to_string(r);
        node->k = k;
        node->d = d;
        node->outcomes = rounds[r];
        node->children.assign(node->outcomes.size(), next);
        next = std::move(node);
    }
    return StrategyTree(next, static_cast<unsigned>(rounds.size()));
}

StrategyTree StrategyTree::build(const NodeBuilder &builder, unsigned depth, Index d, unsigned k, std::size_t max_nodes) {
    std::size_t count = 0;
    std::function<std::shared_ptr<const PovmNode>(std::vector<int> &)> make = [&](std::vector<int> &path) {
        if (++count > max_nodes) throw ResourceError("strategy tree build: node cap exceeded");
        auto node = std::make_shared<PovmNode>();
        node->id = path.empty() ? "root" : path_string(path);
        node->k = k;
        node->d = d;
        node->outcomes = builder(path);
        node->children.resize(node->outcomes.size());
        if (path.size() + 1 < depth) {
            for (std::size_t v = 0; v < node->outcomes.size(); ++v) {
                path.push_back(static_cast<int>(v));
                node->children[v] = make(path);
                path.pop_back();
            }
        }
        return std::shared_ptr<const PovmNode>(node);
    };
    std::vector<int> path;
    return StrategyTree(make(path), depth);
}

const PovmNode &StrategyTree::node_at(const std::vector<int> &path) const {
    if (path.size() >= depth_) throw ArgumentError("node_at: path reaches a leaf");
    const PovmNode *n = root_.get();
    for (int v : path) {
        if (v < 0 || static_cast<std::size_t>(v) >= n->outcomes.size()) throw ArgumentError("node_at: outcome index out of range");
        n = n->children[static_cast<std::size_t>(v)].get();
    }
    return *n;
}

std::vector<const PovmNode *> StrategyTree::distinct_nodes() const {
    std::vector<const PovmNode *> out;
    std::unordered_map<const PovmNode *, bool> seen;
    std::function<void(const PovmNode *)> visit = [&](const PovmNode *n) {
        if (!n || seen.count(n)) return;
        seen[n] = true;
        out.push_back(n);
        for (const auto &c : n->children) visit(c.get());
    };
    visit(root_.get());
    return out;
}

std::string path_string(const std::vector<int> &path) {
    std::string s;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) s += '-';
        s += std::to_string(path[i]);
    }
    return s;
}

std::vector<TreePosition> positions_at_depth(const StrategyTree &tree, unsigned depth, std::size_t max_positions) {
    if (depth > tree.depth()) throw ArgumentError("positions_at_depth: depth beyond the tree");
    std::vector<TreePosition> out;
    TreePosition cur;
    std::function<void(const PovmNode *)> rec = [&](const PovmNode *node) {
        if (cur.path.size() == depth) {
            if (out.size() >= max_positions) throw ResourceError("transcript enumeration exceeds the cap");
            TreePosition p = cur;
            p.node = node;
            out.push_back(std::move(p));
            return;
        }
        for (std::size_t v = 0; v < node->outcomes.size(); ++v) {
            cur.path.push_back(static_cast<int>(v));
            cur.steps.push_back({node, static_cast<int>(v)});
            rec(node->children[v].get());
            cur.path.pop_back();
            cur.steps.pop_back();
        }
    };
    rec(tree.root().get());
    return out;
}

// ---------------------------------------------------------------------------

std::string TranscriptDistribution::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "path,probability" << (stderrs.empty() ? "" : ",stderr") << "\n";
    for (std::size_t i = 0; i < paths.size(); ++i) {
        os << (paths[i].empty() ? "root" : paths[i]) << "," << probs[i];
        if (!stderrs.empty()) os << "," << stderrs[i];
        os << "\n";
    }
    return os.str();
}

double TranscriptDistribution::total() const { return compensated_sum(probs); }

namespace {

// Per-node outcome factors w_v d^k <psi_v|rho^{(x)k}|psi_v>, cached by node.
class OutcomeFactors {
   public:
    explicit OutcomeFactors(const DensityMatrix &rho) : rho_(rho) {}
    const std::vector<double> &of(const PovmNode *node) {
        auto it = cache_.find(node);
        if (it != cache_.end()) return it->second;
        if (node->d != rho_.dim()) throw ArgumentError("state dimension differs from the tree's local dimension");
        std::vector<double> f;
        const auto dim = static_cast<double>(node->joint_dim());
        for (const auto &o : node->outcomes) {
            const double q = tensor_power_expectation(rho_.matrix(), node->k, o.psi).real();
            f.push_back(std::max(0.0, o.weight * dim * q));
        }
        return cache_.emplace(node, std::move(f)).first->second;
    }

   private:
    const DensityMatrix &rho_;
    std::unordered_map<const PovmNode *, std::vector<double>> cache_;
};

TranscriptDistribution distribution_over(const std::vector<TreePosition> &positions, const DensityMatrix &rho) {
    OutcomeFactors factors(rho);
    TranscriptDistribution dist;
    for (const auto &pos : positions) {
        double p = 1.0;
        for (const auto &s : pos.steps) p *= factors.of(s.node)[static_cast<std::size_t>(s.outcome)];
        dist.paths.push_back(path_string(pos.path));
        dist.probs.push_back(p);
    }
    return dist;
}

void require_same_space(const TranscriptDistribution &p, const TranscriptDistribution &q) {
    if (p.paths != q.paths) throw ArgumentError("distributions live on different outcome spaces");
}

}  // namespace

TranscriptDistribution transcript_distribution(const StrategyTree &tree, const DensityMatrix &rho) {
    return distribution_over(positions_at_depth(tree, tree.depth()), rho);
}

TranscriptDistribution node_marginal(const StrategyTree &tree, const DensityMatrix &rho, unsigned depth) {
    return distribution_over(positions_at_depth(tree, depth), rho);
}

TranscriptDistribution mixture_transcript_distribution(const StrategyTree &tree, const std::vector<DensityMatrix> &states,
                                                       const std::vector<double> &weights) {
    if (states.empty() || states.size() != weights.size()) throw ArgumentError("mixture: states and weights mismatch");
    const auto positions = positions_at_depth(tree, tree.depth());
    double wsum = 0.0;
    for (double w : weights) wsum += w;
    TranscriptDistribution mix;
    for (std::size_t i = 0; i < states.size(); ++i) {
        TranscriptDistribution di = distribution_over(positions, states[i]);
        if (i == 0) {
            mix.paths = di.paths;
            mix.probs.assign(di.probs.size(), 0.0);
        }
        for (std::size_t j = 0; j < di.probs.size(); ++j) mix.probs[j] += weights[i] / wsum * di.probs[j];
    }
    return mix;
}

TranscriptDistribution mixture_transcript_distribution(const StrategyTree &tree, const CircuitEnsemble &ensemble,
                                                       double epsilon, std::size_t n_samples, Rng &rng) {
    if (ensemble.finite_support()) {
        std::vector<DensityMatrix> states;
        for (const auto &u : ensemble.members()) states.push_back(build_state(u, epsilon).rho);
        return mixture_transcript_distribution(tree, states, ensemble.weights());
    }
    if (n_samples < 2) throw ArgumentError("mixture: need at least two samples for a continuous ensemble");
    const auto positions = positions_at_depth(tree, tree.depth());
    std::vector<std::vector<double>> per_sample(n_samples);
    const Rng base(rng.next_u64());
    parallel_for(n_samples, [&](std::size_t i) {
        Rng r = base.stream(i);
        per_sample[i] = distribution_over(positions, build_state(ensemble.sample(r), epsilon).rho).probs;
    });
    TranscriptDistribution mix;
    for (const auto &pos : positions) mix.paths.push_back(path_string(pos.path));
    std::vector<double> column(n_samples);
    for (std::size_t j = 0; j < positions.size(); ++j) {
        for (std::size_t i = 0; i < n_samples; ++i) column[i] = per_sample[i][j];
        const Estimate e = mean_estimate(column);
        mix.probs.push_back(e.mean);
        mix.stderrs.push_back(e.se);
    }
    return mix;
}

// ---------------------------------------------------------------------------

double delta_perturbation(const ComplexVector &psi, const ComplexMatrix &observable, double epsilon, unsigned k) {
    const Index d = observable.rows();
    const ComplexMatrix op = ComplexMatrix::Identity(d, d) + epsilon * observable;
    return tensor_power_expectation(op, k, psi).real() - 1.0;
}

double delta_perturbation(const PovmNode &node, int outcome, const UnitaryMatrix &u, double epsilon) {
    if (outcome < 0 || static_cast<std::size_t>(outcome) >= node.outcomes.size()) throw ArgumentError("outcome out of range");
    if (u.dim() != node.d) throw ArgumentError("unitary dimension differs from the node's local dimension");
    return delta_perturbation(node.outcomes[static_cast<std::size_t>(outcome)].psi, rotated_z(u), epsilon, node.k);
}

double likelihood_ratio(const StrategyTree &tree, const std::vector<int> &path, const UnitaryMatrix &u, double epsilon) {
    if (path.size() > tree.depth()) throw ArgumentError("likelihood_ratio: path longer than the tree");
    const ComplexMatrix obs = rotated_z(u);
    const PovmNode *node = tree.root().get();
    double l = 1.0;
    for (int v : path) {
        if (v < 0 || static_cast<std::size_t>(v) >= node->outcomes.size()) throw ArgumentError("likelihood_ratio: bad outcome");
        l *= 1.0 + delta_perturbation(node->outcomes[static_cast<std::size_t>(v)].psi, obs, epsilon, node->k);
        node = node->children[static_cast<std::size_t>(v)].get();
    }
    return l;
}

double likelihood_ratio(const StrategyTree &tree, const std::vector<int> &path, const std::vector<UnitaryMatrix> &us,
                        const std::vector<double> &weights, double epsilon) {
    if (us.size() != weights.size() || us.empty()) throw ArgumentError("likelihood_ratio: members and weights mismatch");
    double total = 0.0, wsum = 0.0;
    for (std::size_t i = 0; i < us.size(); ++i) {
        total += weights[i] * likelihood_ratio(tree, path, us[i], epsilon);
        wsum += weights[i];
    }
    return total / wsum;
}

double pairwise_correlation(const PovmNode &node, const UnitaryMatrix &u, const UnitaryMatrix &v, double epsilon) {
    const ComplexMatrix ou = rotated_z(u);
    const ComplexMatrix ov = rotated_z(v);
    double acc = 0.0;
    for (const auto &o : node.outcomes) {
        acc += o.weight * delta_perturbation(o.psi, ou, epsilon, node.k) * delta_perturbation(o.psi, ov, epsilon, node.k);
    }
    return acc;
}

double tv_distance(const TranscriptDistribution &p, const TranscriptDistribution &q) {
    require_same_space(p, q);
    std::vector<double> diff(p.probs.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = std::abs(p.probs[i] - q.probs[i]);
    return 0.5 * compensated_sum(diff);
}

double kl_divergence(const TranscriptDistribution &p, const TranscriptDistribution &q) {
    require_same_space(p, q);
    std::vector<double> terms;
    for (std::size_t i = 0; i < p.probs.size(); ++i) {
        if (p.probs[i] <= 0.0) continue;
        if (q.probs[i] <= 0.0) throw ArgumentError("kl_divergence: q vanishes where p does not");
        terms.push_back(p.probs[i] * std::log(p.probs[i] / q.probs[i]));
    }
    return std::max(0.0, compensated_sum(terms));
}

double chi_squared(const TranscriptDistribution &p, const TranscriptDistribution &q) {
    require_same_space(p, q);
    std::vector<double> terms;
    for (std::size_t i = 0; i < p.probs.size(); ++i) {
        if (q.probs[i] <= 0.0) throw ArgumentError("chi_squared: q must be positive everywhere");
        const double diff = p.probs[i] - q.probs[i];
        terms.push_back(diff * diff / q.probs[i]);
    }
    return compensated_sum(terms);
}

LeCamReport lecam_check(const TranscriptDistribution &p0, const TranscriptDistribution &p1, const std::vector<int> &decision) {
    require_same_space(p0, p1);
    if (decision.size() != p0.probs.size()) throw ArgumentError("lecam_check: decision size mismatch");
    LeCamReport r;
    for (std::size_t i = 0; i < decision.size(); ++i) {
        if (decision[i]) {
            r.error0 += p0.probs[i];
        } else {
            r.error1 += p1.probs[i];
        }
    }
    r.error_sum = r.error0 + r.error1;
    r.tv = tv_distance(p0, p1);
    r.holds = r.error_sum >= 1.0 - r.tv - 1e-12;
    return r;
}

std::vector<int> maximum_likelihood_decision(const TranscriptDistribution &p0, const TranscriptDistribution &p1) {
    require_same_space(p0, p1);
    std::vector<int> d(p0.probs.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = p1.probs[i] > p0.probs[i] ? 1 : 0;
    return d;
}

RatioFloorReport likelihood_ratio_floor_check(const TranscriptDistribution &p, const TranscriptDistribution &q, double delta) {
    require_same_space(p, q);
    RatioFloorReport r;
    r.min_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.probs.size(); ++i) {
        if (q.probs[i] <= 0.0) continue;
        r.min_ratio = std::min(r.min_ratio, p.probs[i] / q.probs[i]);
    }
    r.tv = tv_distance(p, q);
    r.premise = r.min_ratio > 1.0 - delta;
    r.holds = !r.premise || r.tv <= delta + 1e-12;
    return r;
}

// ---------------------------------------------------------------------------

std::string tree_to_json(const StrategyTree &tree) {
    const auto nodes = tree.distinct_nodes();
    std::unordered_map<const PovmNode *, std::string> ids;
    std::map<std::string, int> used;
    for (const PovmNode *n : nodes) {
        std::string id = n->id.empty() ? "node" : n->id;
        if (used[id]++) id += "#" + std::to_string(used[id] - 1);
        ids[n] = id;
    }
    nlohmann::json j;
    j["depth"] = tree.depth();
    j["k"] = tree.k();
    j["d"] = tree.d();
    j["nonadaptive"] = tree.nonadaptive();
    j["root"] = ids[tree.root().get()];
    nlohmann::json arr = nlohmann::json::array();
    for (const PovmNode *n : nodes) {
        nlohmann::json jn;
        jn["id"] = ids[n];
        nlohmann::json outs = nlohmann::json::array();
        for (std::size_t v = 0; v < n->outcomes.size(); ++v) {
            const auto &o = n->outcomes[v];
            nlohmann::json jo;
            jo["weight"] = o.weight;
            nlohmann::json amp = nlohmann::json::array();
            for (Index i = 0; i < o.psi.size(); ++i) amp.push_back({o.psi(i).real(), o.psi(i).imag()});
            jo["psi"] = amp;
            if (o.parent >= 0) jo["parent"] = o.parent;
            jo["child"] = n->children[v] ? nlohmann::json(ids[n->children[v].get()]) : nlohmann::json(nullptr);
            outs.push_back(jo);
        }
        jn["outcomes"] = outs;
        arr.push_back(jn);
    }
    j["nodes"] = arr;
    return j.dump();
}

StrategyTree tree_from_json(const std::string &text) {
    try {
        const nlohmann::json j = nlohmann::json::parse(text);
        const unsigned depth = j.at("depth").get<unsigned>();
        const unsigned k = j.at("k").get<unsigned>();
        const Index d = j.at("d").get<Index>();
        std::map<std::string, const nlohmann::json *> by_id;
        for (const auto &jn : j.at("nodes")) by_id[jn.at("id").get<std::string>()] = &jn;
        std::map<std::string, std::shared_ptr<const PovmNode>> built;
        std::function<std::shared_ptr<const PovmNode>(const std::string &, unsigned)> make =
            [&](const std::string &id, unsigned level) -> std::shared_ptr<const PovmNode> {
            if (level > depth) throw ArgumentError("tree JSON: cycle or path longer than the depth");
            auto it = built.find(id);
            if (it != built.end()) return it->second;
            auto f = by_id.find(id);
            if (f == by_id.end()) throw ArgumentError("tree JSON: unknown node id '" + id + "'");
            auto node = std::make_shared<PovmNode>();
            node->id = id;
            node->k = k;
            node->d = d;
            for (const auto &jo : f->second->at("outcomes")) {
                PovmElement e;
                e.weight = jo.at("weight").get<double>();
                const auto &amp = jo.at("psi");
                e.psi.resize(static_cast<Index>(amp.size()));
                for (std::size_t i = 0; i < amp.size(); ++i) {
                    e.psi(static_cast<Index>(i)) = Complex(amp[i].at(0).get<double>(), amp[i].at(1).get<double>());
                }
                e.parent = jo.value("parent", -1);
                node->outcomes.push_back(std::move(e));
                const auto &child = jo.at("child");
                node->children.push_back(child.is_null() ? nullptr : make(child.get<std::string>(), level + 1));
            }
            std::shared_ptr<const PovmNode> c = node;
            built[id] = c;
            return c;
        };
        return StrategyTree(make(j.at("root").get<std::string>(), 0), depth);
    } catch (const nlohmann::json::exception &e) {
        throw ArgumentError(std::string("tree JSON: ") + e.what());
    }
}

}  // namespace replab
