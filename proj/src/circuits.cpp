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

#include "replab/circuits.hpp"

#include <bit>
#include <cmath>
#include <json.hpp>

#include "replab/error.hpp"
#include "replab/weingarten.hpp"

namespace replab {

namespace {

Complex i_power(unsigned q) {
    switch (q % 4) {
        case 0:
            return {1.0, 0.0};
        case 1:
            return {0.0, 1.0};
        case 2:
            return {-1.0, 0.0};
        default:
            return {0.0, -1.0};
    }
}

unsigned qubits_of(Index d) {
    if (d < 2 || (d & (d - 1)) != 0) throw ArgumentError("dimension must be a power of two");
    return static_cast<unsigned>(std::countr_zero(static_cast<std::uint64_t>(d)));
}

std::uint32_t qubit_bit(unsigned n, unsigned j) { return std::uint32_t{1} << (n - 1 - j); }

Complex pauli_phase(const SignedPauli &p) {
    const Complex c = i_power(static_cast<unsigned>(std::popcount(p.x & p.z)));
    return p.sign ? -c : c;
}

}  // namespace

ComplexVector SignedPauli::apply(const ComplexVector &v) const {
    const std::size_t d = std::size_t{1} << n;
    if (static_cast<std::size_t>(v.size()) != d) throw ArgumentError("Pauli apply: dimension mismatch");
    const Complex c = pauli_phase(*this);
    ComplexVector out(v.size());
    for (std::size_t b = 0; b < d; ++b) {
        const double s = (std::popcount(z & static_cast<std::uint32_t>(b)) % 2) ? -1.0 : 1.0;
        out(static_cast<Index>(b ^ x)) = c * s * v(static_cast<Index>(b));
    }
    return out;
}

ComplexMatrix SignedPauli::matrix() const {
    const Index d = Index{1} << n;
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    const Complex c = pauli_phase(*this);
    for (Index b = 0; b < d; ++b) {
        const double s = (std::popcount(z & static_cast<std::uint32_t>(b)) % 2) ? -1.0 : 1.0;
        m(b ^ static_cast<Index>(x), b) = c * s;
    }
    return m;
}

bool SignedPauli::commutes_with(const SignedPauli &o) const {
    return (std::popcount((x & o.z) ^ (z & o.x)) % 2) == 0;
}

std::optional<SignedPauli> as_signed_pauli(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols()) return std::nullopt;
    const Index d = m.rows();
    if (d < 2 || (d & (d - 1)) != 0) return std::nullopt;
    SignedPauli p;
    p.n = qubits_of(d);
    Index x = -1;
    for (Index r = 0; r < d; ++r) {
        if (std::abs(m(r, 0)) > 0.5) {
            x = r;
            break;
        }
    }
    if (x < 0) return std::nullopt;
    p.x = static_cast<std::uint32_t>(x);
    const Complex c = m(x, 0);
    for (unsigned k = 0; k < p.n; ++k) {
        const Index b = Index{1} << k;
        const Complex ratio = m(b ^ x, b) / c;
        if (std::abs(ratio + 1.0) < 0.5) p.z |= static_cast<std::uint32_t>(b);
    }
    const Complex base = i_power(static_cast<unsigned>(std::popcount(p.x & p.z)));
    const Complex s = c / base;
    if (std::abs(s - 1.0) < tol) {
        p.sign = false;
    } else if (std::abs(s + 1.0) < tol) {
        p.sign = true;
    } else {
        return std::nullopt;
    }
    if ((p.matrix() - m).cwiseAbs().maxCoeff() > tol) return std::nullopt;
    return p;
}

bool is_clifford(const UnitaryMatrix &u) {
    const unsigned n = qubits_of(u.dim());
    for (unsigned j = 0; j < n; ++j) {
        for (int kind = 0; kind < 2; ++kind) {
            SignedPauli g;
            g.n = n;
            (kind == 0 ? g.x : g.z) = qubit_bit(n, j);
            const ComplexMatrix conj = u.matrix() * g.matrix() * u.matrix().adjoint();
            if (!as_signed_pauli(conj, 1e-8)) return false;
        }
    }
    return true;
}

CliffordTableau sample_clifford_tableau(unsigned n, Rng &rng) {
    if (n == 0 || n > kMaxCliffordQubits) throw ArgumentError("Clifford sampling supports 1..6 qubits");
    CliffordTableau t;
    t.n = n;
    const std::uint64_t space = std::uint64_t{1} << (2 * n);
    auto draw = [&](std::uint64_t lo) {
        SignedPauli p;
        p.n = n;
        const std::uint64_t v = lo + rng.uniform_int(space - lo);
        p.x = static_cast<std::uint32_t>(v & ((std::uint64_t{1} << n) - 1));
        p.z = static_cast<std::uint32_t>(v >> n);
        return p;
    };
    for (unsigned j = 0; j < n; ++j) {
        auto commutes_with_previous = [&](const SignedPauli &p) {
            for (unsigned i = 0; i < j; ++i) {
                if (!p.commutes_with(t.x_images[i]) || !p.commutes_with(t.z_images[i])) return false;
            }
            return true;
        };
        // Image of X_j: uniform nonzero vector in the symplectic complement.
        SignedPauli a = draw(1);
        while (!commutes_with_previous(a)) a = draw(1);
        // Image of Z_j: uniform in the complement and anticommuting with a.
        SignedPauli b = draw(0);
        while (!commutes_with_previous(b) || b.commutes_with(a)) b = draw(0);
        a.sign = rng.uniform_int(2) == 1;
        b.sign = rng.uniform_int(2) == 1;
        t.x_images.push_back(a);
        t.z_images.push_back(b);
    }
    return t;
}

UnitaryMatrix synthesize_clifford(const CliffordTableau &t) {
    const unsigned n = t.n;
    const Index d = Index{1} << n;
    // U|0> is the common +1 eigenvector of the Z images.
    ComplexVector s;
    for (Index b = 0; b < d; ++b) {
        ComplexVector v = ComplexVector::Zero(d);
        v(b) = 1.0;
        for (const auto &q : t.z_images) v = 0.5 * (v + q.apply(v));
        if (v.norm() > 1e-3) {
            s = v / v.norm();
            break;
        }
    }
    if (s.size() == 0) throw InternalError("Clifford synthesis: stabilizer projector vanished");
    ComplexMatrix m(d, d);
    for (Index col = 0; col < d; ++col) {
        ComplexVector v = s;
        for (unsigned j = 0; j < n; ++j) {
            if (static_cast<std::uint32_t>(col) & qubit_bit(n, j)) v = t.x_images[j].apply(v);
        }
        m.col(col) = v;
    }
    return UnitaryMatrix(std::move(m)).canonical_phase();
}

UnitaryMatrix pauli_z_n(unsigned n) {
    if (n == 0 || n > kMaxDenseQubits) throw ArgumentError("pauli_z_n supports 1..10 qubits");
    const Index d = Index{1} << n;
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (Index i = 0; i < d; ++i) m(i, i) = (std::popcount(static_cast<std::uint64_t>(i)) % 2) ? -1.0 : 1.0;
    return UnitaryMatrix(std::move(m));
}

UnitaryMatrix sample_clifford(unsigned n, Rng &rng) { return synthesize_clifford(sample_clifford_tableau(n, rng)); }

UnitaryMatrix sample_interleaved(unsigned n, unsigned depth, const UnitaryMatrix &v, Rng &rng) {
    if (n == 0 || n > kMaxCliffordQubits) throw ArgumentError("interleaved circuits support 1..6 qubits");
    if (v.dim() != 2) throw ArgumentError("interleaved circuits need a single-qubit gate");
    const Index d = Index{1} << n;
    if (depth == 0) return UnitaryMatrix::identity(d);
    const ComplexMatrix rest = ComplexMatrix::Identity(d / 2, d / 2);
    const ComplexMatrix v_full = tensor_product(v.matrix(), rest);
    const ComplexMatrix vdag_full = tensor_product(v.matrix().adjoint(), rest);
    ComplexMatrix u = ComplexMatrix::Identity(d, d);
    for (unsigned step = 0; step < depth; ++step) {
        const std::uint64_t pick = rng.uniform_int(3);
        if (pick == 0) {
            u = v_full * u;
        } else if (pick == 1) {
            u = vdag_full * u;
        }
        u = sample_clifford(n, rng).matrix() * u;
    }
    return UnitaryMatrix(std::move(u)).canonical_phase();
}

UnitaryMatrix default_v_gate() {
    ComplexMatrix t = ComplexMatrix::Identity(2, 2);
    t(1, 1) = std::polar(1.0, M_PI / 4.0);
    UnitaryMatrix gate(std::move(t));
    if (is_clifford(gate)) throw InternalError("default gate unexpectedly normalizes the Pauli group");
    return gate;
}

ComplexMatrix rotated_z(const UnitaryMatrix &u) {
    qubits_of(u.dim());
    const Index d = u.dim();
    ComplexMatrix scaled = u.matrix();
    for (Index i = 0; i < d; ++i) {
        if (std::popcount(static_cast<std::uint64_t>(i)) % 2) scaled.col(i) *= -1.0;
    }
    return scaled * u.matrix().adjoint();
}

StateFamilyMember build_state(const UnitaryMatrix &u, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ArgumentError("epsilon must lie in [0, 1]");
    const Index d = u.dim();
    ComplexMatrix obs = rotated_z(u);
    obs = 0.5 * (obs + obs.adjoint());
    ComplexMatrix rho = (ComplexMatrix::Identity(d, d) + epsilon * obs) / static_cast<double>(d);
    return StateFamilyMember{u, epsilon, std::move(obs), DensityMatrix(std::move(rho))};
}

// ---------------------------------------------------------------------------

CircuitEnsemble CircuitEnsemble::haar(unsigned n_qubits) {
    if (n_qubits == 0 || n_qubits > kMaxDenseQubits) throw ArgumentError("Haar ensemble supports 1..10 qubits");
    return CircuitEnsemble(EnsembleKind::Haar, Index{1} << n_qubits, n_qubits);
}

CircuitEnsemble CircuitEnsemble::haar_dim(Index d) {
    if (d <= 0) throw ArgumentError("Haar ensemble needs a positive dimension");
    unsigned n = 0;
    if ((d & (d - 1)) == 0) n = static_cast<unsigned>(std::countr_zero(static_cast<std::uint64_t>(d)));
    return CircuitEnsemble(EnsembleKind::Haar, d, n);
}

CircuitEnsemble CircuitEnsemble::uniform_clifford(unsigned n_qubits) {
    if (n_qubits == 0 || n_qubits > kMaxCliffordQubits) throw ArgumentError("Clifford ensemble supports 1..6 qubits");
    return CircuitEnsemble(EnsembleKind::UniformClifford, Index{1} << n_qubits, n_qubits);
}

CircuitEnsemble CircuitEnsemble::interleaved(unsigned n_qubits, unsigned depth, UnitaryMatrix v, std::string v_name) {
    if (n_qubits == 0 || n_qubits > kMaxCliffordQubits) throw ArgumentError("interleaved ensemble supports 1..6 qubits");
    if (v.dim() != 2) throw ArgumentError("interleaved ensemble needs a single-qubit gate");
    CircuitEnsemble e(EnsembleKind::Interleaved, Index{1} << n_qubits, n_qubits);
    e.depth_ = depth;
    e.v_ = std::move(v);
    e.v_name_ = std::move(v_name);
    return e;
}

CircuitEnsemble CircuitEnsemble::identity(Index d) {
    if (d <= 0) throw ArgumentError("identity ensemble needs a positive dimension");
    CircuitEnsemble e(EnsembleKind::Identity, d, 0);
    if ((d & (d - 1)) == 0) e.n_ = static_cast<unsigned>(std::countr_zero(static_cast<std::uint64_t>(d)));
    e.members_.push_back(UnitaryMatrix::identity(d));
    e.weights_.push_back(1.0);
    return e;
}

CircuitEnsemble CircuitEnsemble::finite(std::vector<UnitaryMatrix> members, std::vector<double> weights) {
    if (members.empty()) throw ArgumentError("finite ensemble needs at least one member");
    if (weights.empty()) weights.assign(members.size(), 1.0);
    if (weights.size() != members.size()) throw ArgumentError("finite ensemble: weight count mismatch");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw ArgumentError("finite ensemble: weights must be nonnegative");
        total += w;
    }
    if (!(total > 0.0)) throw ArgumentError("finite ensemble: weights sum to zero");
    const Index d = members.front().dim();
    for (const auto &m : members) {
        if (m.dim() != d) throw ArgumentError("finite ensemble: members differ in dimension");
    }
    CircuitEnsemble e(EnsembleKind::Finite, d, 0);
    if ((d & (d - 1)) == 0) e.n_ = static_cast<unsigned>(std::countr_zero(static_cast<std::uint64_t>(d)));
    for (double &w : weights) w /= total;
    e.members_ = std::move(members);
    e.weights_ = std::move(weights);
    return e;
}

std::string CircuitEnsemble::name() const {
    switch (kind_) {
        case EnsembleKind::Haar:
            return "haar";
        case EnsembleKind::UniformClifford:
            return "clifford";
        case EnsembleKind::Interleaved:
            return "interleaved";
        case EnsembleKind::Identity:
            return "identity";
        case EnsembleKind::Finite:
            return "finite";
    }
    return "unknown";
}

UnitaryMatrix CircuitEnsemble::sample(Rng &rng) const {
    switch (kind_) {
        case EnsembleKind::Haar:
            return haar_sample(dim_, rng);
        case EnsembleKind::UniformClifford:
            return sample_clifford(n_, rng);
        case EnsembleKind::Interleaved:
            return sample_interleaved(n_, depth_, *v_, rng);
        case EnsembleKind::Identity:
            return members_.front();
        case EnsembleKind::Finite: {
            const double r = rng.uniform();
            double acc = 0.0;
            for (std::size_t i = 0; i < members_.size(); ++i) {
                acc += weights_[i];
                if (r < acc) return members_[i];
            }
            return members_.back();
        }
    }
    throw InternalError("unknown ensemble kind");
}

namespace {

nlohmann::json matrix_to_json(const ComplexMatrix &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.empty()) throw ArgumentError("matrix JSON must be a nonempty array of rows");
    const auto rows = static_cast<Index>(j.size());
    const auto cols = static_cast<Index>(j[0].size());
    ComplexMatrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        if (static_cast<Index>(j[r].size()) != cols) throw ArgumentError("matrix JSON rows differ in length");
        for (Index c = 0; c < cols; ++c) {
            const auto &e = j[r][c];
            if (!e.is_array() || e.size() != 2) throw ArgumentError("matrix entries must be [re, im] pairs");
            m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

UnitaryMatrix named_gate(const std::string &name) {
    if (name == "T") return default_v_gate();
    if (name == "I") return UnitaryMatrix::identity(2);
    if (name == "H") {
        ComplexMatrix h(2, 2);
        h << 1.0, 1.0, 1.0, -1.0;
        return UnitaryMatrix(h / std::sqrt(2.0));
    }
    throw ArgumentError("unknown gate name '" + name + "' (expected T, I or H)");
}

}  // namespace

std::string CircuitEnsemble::to_json() const {
    nlohmann::json j;
    j["kind"] = name();
    switch (kind_) {
        case EnsembleKind::Haar:
            if (n_ > 0) {
                j["n"] = n_;
            } else {
                j["d"] = dim_;
            }
            break;
        case EnsembleKind::UniformClifford:
            j["n"] = n_;
            break;
        case EnsembleKind::Interleaved:
            j["n"] = n_;
            j["depth"] = depth_;
            if (v_name_ == "custom") {
                j["v"] = matrix_to_json(v_->matrix());
            } else {
                j["v"] = v_name_;
            }
            break;
        case EnsembleKind::Identity:
            j["d"] = dim_;
            break;
        case EnsembleKind::Finite: {
            nlohmann::json ms = nlohmann::json::array();
            for (const auto &m : members_) ms.push_back(matrix_to_json(m.matrix()));
            j["members"] = ms;
            j["weights"] = weights_;
            break;
        }
    }
    return j.dump();
}

CircuitEnsemble CircuitEnsemble::from_json(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ArgumentError(std::string("ensemble JSON: ") + e.what());
    }
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "haar") {
            if (j.contains("d")) return haar_dim(j["d"].get<Index>());
            return haar(j.at("n").get<unsigned>());
        }
        if (kind == "clifford") return uniform_clifford(j.at("n").get<unsigned>());
        if (kind == "interleaved") {
            const unsigned n = j.at("n").get<unsigned>();
            const unsigned depth = j.at("depth").get<unsigned>();
            if (!j.contains("v") || j["v"].is_string()) {
                const std::string v = j.value("v", std::string("T"));
                return interleaved(n, depth, named_gate(v), v);
            }
            return interleaved(n, depth, UnitaryMatrix(matrix_from_json(j["v"])), "custom");
        }
        if (kind == "identity") return identity(j.at("d").get<Index>());
        if (kind == "finite") {
            std::vector<UnitaryMatrix> members;
            for (const auto &m : j.at("members")) members.emplace_back(matrix_from_json(m));
            std::vector<double> weights;
            if (j.contains("weights")) weights = j["weights"].get<std::vector<double>>();
            return finite(std::move(members), std::move(weights));
        }
        throw ArgumentError("unknown ensemble kind '" + kind + "'");
    } catch (const nlohmann::json::exception &e) {
        throw ArgumentError(std::string("ensemble JSON: ") + e.what());
    }
}

}  // namespace replab
