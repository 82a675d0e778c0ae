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

#include "replab/permutation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "replab/error.hpp"

namespace replab {

Permutation::Permutation(std::vector<unsigned> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (unsigned v : images_) {
        if (v >= images_.size() || seen[v]) throw ArgumentError("permutation images are not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::identity(unsigned m) {
    std::vector<unsigned> im(m);
    std::iota(im.begin(), im.end(), 0u);
    return Permutation(std::move(im));
}

Permutation Permutation::swap(unsigned m, unsigned a, unsigned b) {
    if (a >= m || b >= m) throw ArgumentError("swap: index out of range");
    std::vector<unsigned> im(m);
    std::iota(im.begin(), im.end(), 0u);
    std::swap(im[a], im[b]);
    return Permutation(std::move(im));
}

Permutation Permutation::from_cycles(unsigned m, const std::vector<std::vector<unsigned>> &cycles) {
    std::vector<unsigned> im(m);
    std::iota(im.begin(), im.end(), 0u);
    std::vector<bool> used(m, false);
    for (const auto &c : cycles) {
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (c[j] >= m || used[c[j]]) throw ArgumentError("from_cycles: cycles are not disjoint");
            used[c[j]] = true;
            im[c[j]] = c[(j + 1) % c.size()];
        }
    }
    return Permutation(std::move(im));
}

Permutation Permutation::operator*(const Permutation &q) const {
    if (q.degree() != degree()) throw ArgumentError("permutation product: degree mismatch");
    std::vector<unsigned> im(images_.size());
    for (std::size_t i = 0; i < im.size(); ++i) im[i] = images_[q.images_[i]];
    return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
    std::vector<unsigned> im(images_.size());
    for (std::size_t i = 0; i < im.size(); ++i) im[images_[i]] = static_cast<unsigned>(i);
    return Permutation(std::move(im));
}

CycleDecomposition Permutation::cycles() const {
    CycleDecomposition out;
    std::vector<bool> seen(images_.size(), false);
    for (unsigned s = 0; s < images_.size(); ++s) {
        if (seen[s]) continue;
        std::vector<unsigned> c;
        for (unsigned x = s; !seen[x]; x = images_[x]) {
            seen[x] = true;
            c.push_back(x);
        }
        out.lengths.push_back(static_cast<unsigned>(c.size()));
        out.cycles.push_back(std::move(c));
    }
    out.cycle_count = static_cast<unsigned>(out.cycles.size());
    std::sort(out.lengths.begin(), out.lengths.end(), std::greater<>());
    return out;
}

unsigned Permutation::cycle_count() const {
    std::vector<bool> seen(images_.size(), false);
    unsigned count = 0;
    for (unsigned s = 0; s < images_.size(); ++s) {
        if (seen[s]) continue;
        ++count;
        for (unsigned x = s; !seen[x]; x = images_[x]) seen[x] = true;
    }
    return count;
}

std::string Permutation::cycle_type_key() const { return partition_key(cycles().lengths); }

bool Permutation::all_cycles_even() const {
    for (unsigned len : cycles().lengths) {
        if (len % 2 != 0) return false;
    }
    return true;
}

std::size_t Permutation::rank() const {
    const std::size_t m = images_.size();
    std::size_t r = 0;
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t smaller = 0;
        for (std::size_t j = i + 1; j < m; ++j) smaller += images_[j] < images_[i] ? 1 : 0;
        r = r * (m - i) + smaller;
    }
    return r;
}

unsigned cycle_count(const Permutation &p) { return p.cycle_count(); }

std::uint64_t factorial(unsigned m) {
    std::uint64_t f = 1;
    for (unsigned i = 2; i <= m; ++i) f *= i;
    return f;
}

std::vector<Permutation> enumerate_sym(unsigned m) {
    if (m == 0) throw ArgumentError("enumerate_sym: degree must be positive");
    if (m > kMaxEnumerationDegree) throw ResourceError("enumerate_sym: degree above the enumeration cap of 9");
    std::vector<unsigned> im(m);
    std::iota(im.begin(), im.end(), 0u);
    std::vector<Permutation> out;
    out.reserve(factorial(m));
    do {
        out.emplace_back(im);
    } while (std::next_permutation(im.begin(), im.end()));
    return out;
}

std::vector<std::vector<unsigned>> partitions(unsigned m) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    std::function<void(unsigned, unsigned)> rec = [&](unsigned rem, unsigned max_part) {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (unsigned p = std::min(rem, max_part); p >= 1; --p) {
            cur.push_back(p);
            rec(rem - p, p);
            cur.pop_back();
        }
    };
    rec(m, m);
    return out;
}

std::string partition_key(const std::vector<unsigned> &parts) {
    std::string key;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) key += '+';
        key += std::to_string(parts[i]);
    }
    return key;
}

std::uint64_t class_size(const std::vector<unsigned> &parts) {
    unsigned m = 0;
    for (unsigned p : parts) m += p;
    std::uint64_t denom = 1;
    std::vector<unsigned> mult(m + 1, 0);
    for (unsigned p : parts) {
        denom *= p;
        ++mult[p];
    }
    for (unsigned a : mult) denom *= factorial(a);
    return factorial(m) / denom;
}

// ---------------------------------------------------------------------------
// Cycle sums.

namespace {

mpz_class power(unsigned d, unsigned e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), d, e);
    return r;
}

// histogram[c] = number of permutations (optionally only all-even ones) with
// c cycles.
std::vector<std::uint64_t> cycle_histogram(unsigned m, bool even_only) {
    std::vector<std::uint64_t> hist(m + 1, 0);
    for (const Permutation &p : enumerate_sym(m)) {
        if (even_only && !p.all_cycles_even()) continue;
        ++hist[p.cycle_count()];
    }
    return hist;
}

mpz_class evaluate_histogram(const std::vector<std::uint64_t> &hist, unsigned d) {
    mpz_class total = 0;
    for (unsigned c = 0; c < hist.size(); ++c) {
        if (hist[c] == 0) continue;
        total += mpz_class(static_cast<unsigned long>(hist[c])) * power(d, c);
    }
    return total;
}

}  // namespace

mpz_class sum_d_power_cycles_brute_force(unsigned m, unsigned d) {
    return evaluate_histogram(cycle_histogram(m, false), d);
}

mpz_class sum_d_power_cycles_closed_form(unsigned m, unsigned d) {
    mpz_class r = 1;
    for (unsigned j = 0; j < m; ++j) r *= d + j;
    return r;
}

mpz_class sum_d_power_cycles(unsigned m, unsigned d) {
    const mpz_class brute = sum_d_power_cycles_brute_force(m, d);
    if (brute != sum_d_power_cycles_closed_form(m, d)) {
        throw InternalError("cycle sum: enumeration disagrees with the rising factorial");
    }
    return brute;
}

mpz_class sum_d_power_even_cycles_brute_force(unsigned m, unsigned d) {
    return evaluate_histogram(cycle_histogram(m, true), d);
}

mpz_class sum_d_power_even_cycles_closed_form(unsigned m, unsigned d) {
    if (m % 2 != 0) return 0;
    mpz_class r = 1;
    for (unsigned j = m - 1; j >= 1 && j <= m; j -= 2) r *= j;
    for (unsigned j = 0; j < m / 2; ++j) r *= d + 2 * j;
    return r;
}

mpz_class sum_d_power_even_cycles(unsigned m, unsigned d) {
    const mpz_class brute = sum_d_power_even_cycles_brute_force(m, d);
    if (brute != sum_d_power_even_cycles_closed_form(m, d)) {
        throw InternalError("even-cycle sum: enumeration disagrees with the double-factorial form");
    }
    return brute;
}

// ---------------------------------------------------------------------------
// Operators.

ComplexMatrix permutation_operator(const Permutation &p, unsigned d) {
    const unsigned m = p.degree();
    const std::size_t dim = checked_pow(d, m, "permutation_operator");
    require_matrix_budget(dim, dim, "permutation_operator");
    std::vector<unsigned> slots(m);
    std::iota(slots.begin(), slots.end(), 0u);
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Index>(dim), static_cast<Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        ComplexVector e = ComplexVector::Zero(static_cast<Index>(dim));
        e(static_cast<Index>(col)) = 1.0;
        out.col(static_cast<Index>(col)) = apply_permutation(p, d, m, slots, e);
    }
    return out;
}

Complex trace_perm_tensor(const Permutation &p, std::span<const ComplexMatrix> factors) {
    if (factors.size() != p.degree()) throw ArgumentError("trace_perm_tensor: need one factor per point");
    if (factors.empty()) return 1.0;
    const Index d = factors[0].rows();
    for (const auto &f : factors) {
        if (f.rows() != d || f.cols() != d) throw ArgumentError("trace_perm_tensor: factor dimension mismatch");
    }
    Complex total = 1.0;
    for (const auto &cycle : p.cycles().cycles) {
        // Cycle c0 -> c1 = p(c0) -> ... contributes tr(A_{c_{L-1}} ... A_{c1} A_{c0}).
        ComplexMatrix prod = factors[cycle[0]];
        for (std::size_t j = 1; j < cycle.size(); ++j) prod = factors[cycle[j]] * prod;
        total *= prod.trace();
    }
    return total;
}

ComplexVector apply_permutation(const Permutation &p, unsigned d, unsigned total, std::span<const unsigned> slots,
                                const ComplexVector &v) {
    const unsigned m = p.degree();
    if (slots.size() != m) throw ArgumentError("apply_permutation: slot count differs from degree");
    const std::size_t dim = checked_pow(d, total, "apply_permutation");
    if (static_cast<std::size_t>(v.size()) != dim) throw ArgumentError("apply_permutation: vector dimension mismatch");
    std::vector<std::size_t> stride(m);
    for (unsigned s = 0; s < m; ++s) {
        if (slots[s] >= total) throw ArgumentError("apply_permutation: slot out of range");
        stride[s] = checked_pow(d, total - 1 - slots[s], "apply_permutation");
    }
    // (P v)[j] = v[j'] where digit s of j' is digit p(s) of j.
    ComplexVector out(v.size());
    std::vector<std::size_t> digit(m);
    for (std::size_t j = 0; j < dim; ++j) {
        std::size_t base = j;
        for (unsigned s = 0; s < m; ++s) {
            digit[s] = (j / stride[s]) % d;
            base -= digit[s] * stride[s];
        }
        std::size_t src = base;
        for (unsigned s = 0; s < m; ++s) src += digit[p(s)] * stride[s];
        out(static_cast<Index>(j)) = v(static_cast<Index>(src));
    }
    return out;
}

}  // namespace replab
