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

#include "replab/weingarten.hpp"

#include <cmath>
#include <mutex>

#include "replab/error.hpp"

namespace replab {

namespace {

mpz_class power(unsigned d, unsigned e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), d, e);
    return r;
}

struct ClassIndex {
    std::vector<std::vector<unsigned>> parts;
    std::vector<std::string> keys;
    std::map<std::string, std::size_t> by_key;
    std::vector<std::size_t> of_rank;  // class of the permutation with that rank
};

ClassIndex classify(const std::vector<Permutation> &perms, unsigned m) {
    ClassIndex ci;
    ci.parts = partitions(m);
    for (std::size_t i = 0; i < ci.parts.size(); ++i) {
        ci.keys.push_back(partition_key(ci.parts[i]));
        ci.by_key[ci.keys.back()] = i;
    }
    ci.of_rank.resize(perms.size());
    for (std::size_t r = 0; r < perms.size(); ++r) ci.of_rank[r] = ci.by_key.at(perms[r].cycle_type_key());
    return ci;
}

// Solves a small dense rational system in place; returns x with A x = b.
std::vector<mpq_class> solve_rational(std::vector<std::vector<mpq_class>> a, std::vector<mpq_class> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) throw UnsupportedRegimeError("Weingarten Gram system is singular");
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const mpq_class f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<mpq_class> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

}  // namespace

std::string rational_string(const mpq_class &q) { return q.get_str(); }

const mpq_class &WeingartenTable::exact(const Permutation &p) const {
    if (p.degree() != m_) throw ArgumentError("Weingarten lookup: degree mismatch");
    return values_.at(p.cycle_type_key());
}

mpq_class WeingartenTable::absolute_sum() const {
    mpq_class total = 0;
    for (const auto &parts : partitions(m_)) {
        total += mpq_class(static_cast<unsigned long>(class_size(parts))) * abs(values_.at(partition_key(parts)));
    }
    return total;
}

mpq_class WeingartenTable::absolute_sum_closed_form() const {
    // (d-m)!/d! = 1 / (d (d-1) ... (d-m+1))
    mpz_class denom = 1;
    for (unsigned j = 0; j < m_; ++j) denom *= d_ - j;
    return mpq_class(mpz_class(1), denom);
}

std::shared_ptr<const WeingartenTable> build_weingarten_table(unsigned m, unsigned d) {
    if (m == 0) throw ArgumentError("Weingarten table: degree must be positive");
    if (m > kMaxWeingartenDegree) throw ResourceError("Weingarten table: degree above the cap of 6");
    if (d < m) throw UnsupportedRegimeError("Weingarten table requires d >= m (Gram matrix is singular otherwise)");

    const std::vector<Permutation> perms = enumerate_sym(m);
    const ClassIndex ci = classify(perms, m);
    const std::size_t nclass = ci.parts.size();
    std::vector<Permutation> inverses;
    inverses.reserve(perms.size());
    for (const auto &p : perms) inverses.push_back(p.inverse());

    // Class representative: first permutation of each class in rank order.
    std::vector<std::size_t> rep(nclass, perms.size());
    for (std::size_t r = 0; r < perms.size(); ++r) {
        if (rep[ci.of_rank[r]] == perms.size()) rep[ci.of_rank[r]] = r;
    }

    // counts[s][mu][c]: number of tau in class mu with #(sigma_s tau^-1) = c.
    auto row_counts = [&](const Permutation &sigma) {
        std::vector<std::vector<unsigned long>> cnt(nclass, std::vector<unsigned long>(m + 1, 0));
        for (std::size_t t = 0; t < perms.size(); ++t) ++cnt[ci.of_rank[t]][(sigma * inverses[t]).cycle_count()];
        return cnt;
    };
    std::vector<mpz_class> dpow(m + 1);
    for (unsigned c = 0; c <= m; ++c) dpow[c] = power(d, c);

    // Class-reduced system: for each class lambda, sum_mu Wg(mu) R[lambda][mu] = [lambda = identity].
    const std::size_t id_class = ci.by_key.at(partition_key(std::vector<unsigned>(m, 1)));
    std::vector<std::vector<mpq_class>> a(nclass, std::vector<mpq_class>(nclass));
    std::vector<mpq_class> rhs(nclass, 0);
    rhs[id_class] = 1;
    for (std::size_t lam = 0; lam < nclass; ++lam) {
        const auto cnt = row_counts(perms[rep[lam]]);
        for (std::size_t mu = 0; mu < nclass; ++mu) {
            mpz_class s = 0;
            for (unsigned c = 0; c <= m; ++c) s += mpz_class(cnt[mu][c]) * dpow[c];
            a[lam][mu] = s;
        }
    }
    const std::vector<mpq_class> w = solve_rational(a, rhs);

    // Full per-permutation verification of the Gram relation.
    for (std::size_t s = 0; s < perms.size(); ++s) {
        const auto cnt = row_counts(perms[s]);
        mpq_class acc = 0;
        for (std::size_t mu = 0; mu < nclass; ++mu) {
            mpz_class t = 0;
            for (unsigned c = 0; c <= m; ++c) t += mpz_class(cnt[mu][c]) * dpow[c];
            acc += w[mu] * t;
        }
        if (acc != (s == rep[id_class] ? 1 : 0)) {
            throw InternalError("Weingarten table fails the Gram relation at permutation rank " + std::to_string(s));
        }
    }

    auto table = std::make_shared<WeingartenTable>();
    table->m_ = m;
    table->d_ = d;
    for (std::size_t mu = 0; mu < nclass; ++mu) table->values_[ci.keys[mu]] = w[mu];
    table->by_rank_.resize(perms.size());
    for (std::size_t r = 0; r < perms.size(); ++r) table->by_rank_[r] = w[ci.of_rank[r]].get_d();
    return table;
}

std::shared_ptr<const WeingartenTable> weingarten_table(unsigned m, unsigned d) {
    static std::mutex mutex;
    static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const WeingartenTable>> cache;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find({m, d});
        if (it != cache.end()) return it->second;
    }
    auto table = build_weingarten_table(m, d);
    std::lock_guard<std::mutex> lock(mutex);
    return cache.emplace(std::make_pair(m, d), table).first->second;
}

Complex haar_moment_entries(const WeingartenTable &table, const MomentIndices &idx) {
    const unsigned m = table.m();
    if (idx.i.size() != m || idx.j.size() != m || idx.i_dag.size() != m || idx.j_dag.size() != m) {
        throw ArgumentError("haar_moment_entries: index tuples must have length m");
    }
    // Udag_{a b} = conj(U_{b a}): row indices of the conjugated entries are
    // j_dag, column indices are i_dag.
    const std::vector<Permutation> perms = enumerate_sym(m);
    std::vector<const Permutation *> row_match, col_match;
    for (const auto &p : perms) {
        bool rows = true, cols = true;
        for (unsigned s = 0; s < m; ++s) {
            rows = rows && idx.i[s] == idx.j_dag[p(s)];
            cols = cols && idx.j[s] == idx.i_dag[p(s)];
        }
        if (rows) row_match.push_back(&p);
        if (cols) col_match.push_back(&p);
    }
    double total = 0.0;
    for (const Permutation *sigma : row_match) {
        for (const Permutation *tau : col_match) total += table.value(*sigma * tau->inverse());
    }
    return total;
}

Complex haar_expect_trace_power(const ComplexMatrix &a, const ComplexMatrix &b, unsigned m) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw ArgumentError("haar_expect_trace_power: A and B must be square of equal dimension");
    }
    const auto d = static_cast<unsigned>(a.rows());
    const auto table = weingarten_table(m, d);
    const std::vector<Permutation> perms = enumerate_sym(m);
    // Both trace factors are class functions; evaluate once per class.
    std::map<std::string, std::pair<Complex, Complex>> per_class;
    const std::vector<ComplexMatrix> fa(m, a), fb(m, b);
    std::vector<Complex> ta(perms.size()), tb(perms.size());
    for (std::size_t r = 0; r < perms.size(); ++r) {
        const std::string key = perms[r].cycle_type_key();
        auto it = per_class.find(key);
        if (it == per_class.end()) {
            it = per_class.emplace(key, std::make_pair(trace_perm_tensor(perms[r], fa), trace_perm_tensor(perms[r], fb))).first;
        }
        ta[r] = it->second.first;
        tb[r] = it->second.second;
    }
    Complex total = 0.0;
    for (std::size_t s = 0; s < perms.size(); ++s) {
        Complex inner = 0.0;
        for (std::size_t t = 0; t < perms.size(); ++t) {
            inner += ta[perms[t].inverse().rank()] * table->value(perms[s] * perms[t].inverse());
        }
        total += tb[s] * inner;
    }
    return total;
}

UnitaryMatrix haar_sample(Index d, Rng &rng) {
    if (d <= 0) throw ArgumentError("haar_sample: dimension must be positive");
    const ComplexMatrix z = rng.gaussian_matrix(d, d);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix &r = qr.matrixQR();
    for (Index i = 0; i < d; ++i) {
        const Complex rii = r(i, i);
        const double mag = std::abs(rii);
        q.col(i) *= mag > 0.0 ? rii / mag : Complex(1.0);
    }
    return UnitaryMatrix(std::move(q));
}

MontanaroReport montanaro_bound_check(unsigned m, unsigned d, double constant) {
    if (static_cast<double>(m) > std::pow(static_cast<double>(d), 2.0 / 3.0) + 1e-12) {
        throw ArgumentError("montanaro_bound_check requires m <= d^(2/3)");
    }
    const auto table = weingarten_table(m, d);
    MontanaroReport rep;
    rep.m = m;
    rep.d = d;
    rep.constant = constant;
    for (const auto &parts : partitions(m)) {
        const std::string key = partition_key(parts);
        const auto cycles = static_cast<unsigned>(parts.size());
        const mpq_class scaled = abs(table->values().at(key)) * mpq_class(power(d, 2 * m - cycles));
        rep.ratios[key] = scaled.get_d();
        rep.max_ratio = std::max(rep.max_ratio, rep.ratios[key]);
    }
    rep.bounded = rep.max_ratio <= constant;
    return rep;
}

}  // namespace replab
