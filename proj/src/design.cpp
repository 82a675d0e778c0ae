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

#include "replab/design.hpp"

#include <algorithm>
#include <cmath>

#include "replab/error.hpp"
#include "replab/parallel.hpp"
#include "replab/permutation.hpp"
#include "replab/weingarten.hpp"

namespace replab {

namespace {

std::size_t local_pow(Index d, unsigned t, const char *what) { return checked_pow(static_cast<std::size_t>(d), t, what); }

// Row index of P_s|i>, i.e. digits r_t = i_{s^-1(t)}.
std::vector<std::size_t> permuted_indices(const Permutation &s, Index d, unsigned t) {
    const std::size_t dim = local_pow(d, t, "twirl");
    const auto ud = static_cast<std::size_t>(d);
    const Permutation inv = s.inverse();
    std::vector<std::size_t> out(dim);
    std::vector<std::size_t> digit(t);
    for (std::size_t i = 0; i < dim; ++i) {
        std::size_t rem = i;
        for (unsigned k = t; k-- > 0;) {
            digit[k] = rem % ud;
            rem /= ud;
        }
        std::size_t r = 0;
        for (unsigned k = 0; k < t; ++k) r = r * ud + digit[inv(k)];
        out[i] = r;
    }
    return out;
}

double hs_inner_real(const ComplexMatrix &a, const ComplexMatrix &b) {
    return (a.array().conjugate() * b.array()).real().sum();
}

}  // namespace

Probe Probe::from_dense(std::string label, ComplexMatrix m, Index local_dim, unsigned t) {
    const auto dim = static_cast<Index>(local_pow(local_dim, t, "probe"));
    if (m.rows() != dim || m.cols() != dim) throw ArgumentError("probe: matrix dimension is not d^t");
    Probe p;
    p.label = std::move(label);
    p.form = Form::Dense;
    p.local_dim = local_dim;
    p.t = t;
    p.dense = std::move(m);
    return p;
}

Probe Probe::product(std::string label, std::vector<ComplexMatrix> factors) {
    if (factors.empty()) throw ArgumentError("product probe needs at least one factor");
    const Index d = factors[0].rows();
    for (const auto &f : factors) {
        if (f.rows() != d || f.cols() != d) throw ArgumentError("product probe: factors must be square of equal size");
    }
    Probe p;
    p.label = std::move(label);
    p.form = Form::Product;
    p.local_dim = d;
    p.t = static_cast<unsigned>(factors.size());
    p.factors = std::move(factors);
    return p;
}

Probe Probe::outer(std::string label, ComplexVector left, ComplexVector right, Index local_dim, unsigned t) {
    const auto dim = static_cast<Index>(local_pow(local_dim, t, "probe"));
    if (left.size() != dim || right.size() != dim) throw ArgumentError("outer probe: vector dimension is not d^t");
    Probe p;
    p.label = std::move(label);
    p.form = Form::Outer;
    p.local_dim = local_dim;
    p.t = t;
    p.left = std::move(left);
    p.right = std::move(right);
    return p;
}

ComplexMatrix Probe::to_dense() const {
    switch (form) {
        case Form::Dense:
            return dense;
        case Form::Product: {
            ComplexMatrix m = factors[0];
            for (std::size_t i = 1; i < factors.size(); ++i) m = tensor_product(m, factors[i]);
            return m;
        }
        case Form::Outer:
            return left * right.adjoint();
    }
    throw InternalError("unknown probe form");
}

ComplexMatrix Probe::conjugated(const UnitaryMatrix &u) const {
    if (u.dim() != local_dim) throw ArgumentError("probe conjugation: unitary dimension mismatch");
    switch (form) {
        case Form::Dense: {
            const ComplexMatrix ut = tensor_power(u.matrix(), t);
            return ut * dense * ut.adjoint();
        }
        case Form::Product: {
            const ComplexMatrix &um = u.matrix();
            ComplexMatrix m = um * factors[0] * um.adjoint();
            for (std::size_t i = 1; i < factors.size(); ++i) m = tensor_product(m, um * factors[i] * um.adjoint());
            return m;
        }
        case Form::Outer: {
            const ComplexVector l = apply_tensor_power(u.matrix(), t, left);
            const ComplexVector r = apply_tensor_power(u.matrix(), t, right);
            return l * r.adjoint();
        }
    }
    throw InternalError("unknown probe form");
}

std::vector<Probe> default_probes(Index d, unsigned t, Rng &rng) {
    const auto dim = static_cast<Index>(local_pow(d, t, "default_probes"));
    std::vector<Probe> probes;
    ComplexMatrix z = ComplexMatrix::Zero(d, d);
    const bool power_of_two = (d & (d - 1)) == 0;
    for (Index i = 0; i < d; ++i) {
        const bool odd = power_of_two ? (__builtin_popcountll(static_cast<unsigned long long>(i)) % 2) : (i % 2);
        z(i, i) = odd ? -1.0 : 1.0;
    }
    probes.push_back(Probe::product("Z^t", std::vector<ComplexMatrix>(t, z)));
    for (int r = 0; r < 2; ++r) {
        ComplexVector psi = rng.gaussian_vector(dim);
        psi /= psi.norm();
        probes.push_back(Probe::outer("random_projector_" + std::to_string(r), psi, psi, d, t));
    }
    ComplexVector e0 = ComplexVector::Zero(dim), elast = ComplexVector::Zero(dim);
    e0(0) = 1.0;
    elast(dim - 1) = 1.0;
    probes.push_back(Probe::outer("elementary_first_first", e0, e0, d, t));
    probes.push_back(Probe::outer("elementary_first_last", e0, elast, d, t));
    return probes;
}

ComplexMatrix exact_haar_moment_apply(const ComplexMatrix &input, Index d, unsigned t) {
    const auto dim = static_cast<Index>(local_pow(d, t, "exact_haar_moment_apply"));
    if (input.rows() != dim || input.cols() != dim) throw ArgumentError("twirl input must be d^t x d^t");
    const auto table = weingarten_table(t, static_cast<unsigned>(d));
    const std::vector<Permutation> perms = enumerate_sym(t);
    std::vector<std::vector<std::size_t>> maps;
    maps.reserve(perms.size());
    for (const auto &p : perms) maps.push_back(permuted_indices(p, d, t));
    // a_s = tr(P_s^dag X) = sum_i X[s.i, i].
    std::vector<Complex> a(perms.size(), 0.0);
    for (std::size_t s = 0; s < perms.size(); ++s) {
        for (Index i = 0; i < dim; ++i) a[s] += input(static_cast<Index>(maps[s][static_cast<std::size_t>(i)]), i);
    }
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (std::size_t tau = 0; tau < perms.size(); ++tau) {
        Complex c = 0.0;
        const Permutation tinv = perms[tau].inverse();
        for (std::size_t s = 0; s < perms.size(); ++s) c += table->value(perms[s] * tinv) * a[s];
        for (Index i = 0; i < dim; ++i) out(static_cast<Index>(maps[tau][static_cast<std::size_t>(i)]), i) += c;
    }
    return out;
}

ComplexMatrix empirical_moment_apply(const CircuitEnsemble &ensemble, const Probe &input, std::size_t n_samples,
                                     Rng &rng) {
    if (n_samples == 0) throw ArgumentError("empirical_moment_apply: need at least one sample");
    const auto dim = static_cast<std::size_t>(local_pow(input.local_dim, input.t, "empirical_moment_apply"));
    const std::size_t blocks = (n_samples + kJackknifeBlock - 1) / kJackknifeBlock;
    require_matrix_budget(dim * blocks, dim, "empirical_moment_apply");
    const Rng base(rng.next_u64());
    std::vector<ComplexMatrix> sums(blocks);
    parallel_for(blocks, [&](std::size_t b) {
        Rng r = base.stream(b);
        const std::size_t lo = b * kJackknifeBlock;
        const std::size_t hi = std::min(n_samples, lo + kJackknifeBlock);
        ComplexMatrix acc = ComplexMatrix::Zero(static_cast<Index>(dim), static_cast<Index>(dim));
        for (std::size_t i = lo; i < hi; ++i) acc += input.conjugated(ensemble.sample(r));
        sums[b] = std::move(acc);
    });
    ComplexMatrix total = ComplexMatrix::Zero(static_cast<Index>(dim), static_cast<Index>(dim));
    for (const auto &s : sums) total += s;
    return total / static_cast<double>(n_samples);
}

MomentReport design_distance(const CircuitEnsemble &ensemble, unsigned t, const std::vector<Probe> &probes,
                             std::size_t n_samples, Rng &rng) {
    if (probes.empty()) throw ArgumentError("design_distance: empty probe set");
    const std::size_t blocks = n_samples / kJackknifeBlock;
    if (blocks < 3) throw ArgumentError("design_distance: need at least 300 samples (3 jackknife blocks)");
    const Index d = ensemble.dim();
    const auto dim = static_cast<Index>(local_pow(d, t, "design_distance"));
    for (const auto &p : probes) {
        if (p.local_dim != d || p.t != t) throw ArgumentError("design_distance: probe shape does not match (d, t)");
    }
    require_matrix_budget(static_cast<std::size_t>(dim) * blocks * probes.size(), static_cast<std::size_t>(dim),
                          "design_distance");

    std::vector<ComplexMatrix> exact;
    exact.reserve(probes.size());
    for (const auto &p : probes) exact.push_back(exact_haar_moment_apply(p.to_dense(), d, t));

    // w[b][p] = block mean of the conjugated probe minus the exact twirl.
    const Rng base(rng.next_u64());
    std::vector<std::vector<ComplexMatrix>> w(blocks);
    parallel_for(blocks, [&](std::size_t b) {
        Rng r = base.stream(b);
        std::vector<ComplexMatrix> acc(probes.size(), ComplexMatrix::Zero(dim, dim));
        for (std::size_t i = 0; i < kJackknifeBlock; ++i) {
            const UnitaryMatrix u = ensemble.sample(r);
            for (std::size_t p = 0; p < probes.size(); ++p) acc[p] += probes[p].conjugated(u);
        }
        for (std::size_t p = 0; p < probes.size(); ++p) acc[p] = acc[p] / static_cast<double>(kJackknifeBlock) - exact[p];
        w[b] = std::move(acc);
    });

    MomentReport rep;
    rep.t = t;
    rep.ensemble = ensemble.to_json();
    rep.n_samples = blocks * kJackknifeBlock;
    const auto nb = static_cast<double>(blocks);
    std::size_t worst = 0;
    for (std::size_t p = 0; p < probes.size(); ++p) {
        ComplexMatrix s = ComplexMatrix::Zero(dim, dim);
        std::vector<double> self(blocks);
        for (std::size_t b = 0; b < blocks; ++b) {
            s += w[b][p];
            self[b] = w[b][p].squaredNorm();
        }
        const double s2 = s.squaredNorm();
        const double self_sum = compensated_sum(self);
        // Cross terms only: E[<W_a, W_b>] = ||bias||^2 for a != b.
        const double est = (s2 - self_sum) / (nb * (nb - 1.0));
        std::vector<double> loo(blocks);
        for (std::size_t b = 0; b < blocks; ++b) {
            const double s2b = s2 - 2.0 * hs_inner_real(s, w[b][p]) + self[b];
            loo[b] = (s2b - (self_sum - self[b])) / ((nb - 1.0) * (nb - 2.0));
        }
        ProbeDistance pd{probes[p].label, est, jackknife_se(loo)};
        rep.probes.push_back(pd);
        if (pd.distance_sq > rep.probes[worst].distance_sq) worst = p;
    }
    const ProbeDistance &wp = rep.probes[worst];
    rep.worst_probe = wp.label;
    rep.distance_sq = wp.distance_sq;
    rep.distance_sq_se = wp.distance_sq_se;
    const double root = std::sqrt(std::abs(wp.distance_sq));
    rep.distance_hs = wp.distance_sq < 0.0 ? -root : root;
    rep.distance_se = wp.distance_sq_se / (2.0 * std::max(root, std::sqrt(wp.distance_sq_se)));
    return rep;
}

Estimate frame_potential(const CircuitEnsemble &ensemble, unsigned t, std::size_t n_pairs, Rng &rng) {
    if (n_pairs < 2) throw ArgumentError("frame_potential: need at least two pairs");
    const Rng base(rng.next_u64());
    std::vector<double> values(n_pairs);
    const std::size_t blocks = (n_pairs + kJackknifeBlock - 1) / kJackknifeBlock;
    parallel_for(blocks, [&](std::size_t b) {
        Rng r = base.stream(b);
        const std::size_t hi = std::min(n_pairs, (b + 1) * kJackknifeBlock);
        for (std::size_t i = b * kJackknifeBlock; i < hi; ++i) {
            const UnitaryMatrix u = ensemble.sample(r);
            const UnitaryMatrix v = ensemble.sample(r);
            const double mag2 = std::norm((u.matrix().adjoint() * v.matrix()).trace());
            values[i] = std::pow(mag2, static_cast<double>(t));
        }
    });
    return mean_estimate(values);
}

double haar_frame_potential(Index d, unsigned t) {
    const auto table = weingarten_table(t, static_cast<unsigned>(d));
    mpq_class total = 0;
    for (const auto &p : enumerate_sym(t)) {
        mpz_class dp;
        mpz_ui_pow_ui(dp.get_mpz_t(), static_cast<unsigned long>(d), p.cycle_count());
        total += table->exact(p) * dp;
    }
    total *= mpz_class(static_cast<unsigned long>(factorial(t)));
    return total.get_d();
}

LipschitzFunction trace_form(const ComplexMatrix &a, const ComplexMatrix &b, double scale) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw ArgumentError("trace_form: A and B must be square of equal dimension");
    }
    LipschitzFunction fn;
    fn.name = "trace_form";
    fn.dim = a.rows();
    fn.lipschitz = 2.0 * std::abs(scale) * a.norm() * schatten_norm(b, Schatten::Infinity);
    fn.f = [a, b, scale](const UnitaryMatrix &u) {
        return scale * (a * u.matrix() * b * u.matrix().adjoint()).trace().real();
    };
    return fn;
}

LipschitzFunction constant_function(Index d, double value) {
    LipschitzFunction fn;
    fn.name = "constant";
    fn.dim = d;
    fn.lipschitz = 0.0;
    fn.f = [value](const UnitaryMatrix &) { return value; };
    return fn;
}

TailReport concentration_probe(const LipschitzFunction &fn, std::size_t n_samples, Rng &rng) {
    if (n_samples < 10) throw ArgumentError("concentration_probe: need at least 10 samples");
    if (!fn.f || fn.dim <= 0) throw ArgumentError("concentration_probe: incomplete function descriptor");
    const Rng base(rng.next_u64());
    std::vector<double> x(n_samples);
    const std::size_t blocks = (n_samples + kJackknifeBlock - 1) / kJackknifeBlock;
    parallel_for(blocks, [&](std::size_t b) {
        Rng r = base.stream(b);
        const std::size_t hi = std::min(n_samples, (b + 1) * kJackknifeBlock);
        for (std::size_t i = b * kJackknifeBlock; i < hi; ++i) x[i] = fn.f(haar_sample(fn.dim, r));
    });

    TailReport rep;
    rep.name = fn.name;
    rep.dim = fn.dim;
    rep.n_samples = n_samples;
    rep.lipschitz = fn.lipschitz;
    rep.mean = compensated_sum(x) / static_cast<double>(n_samples);
    std::vector<double> dev(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) dev[i] = std::abs(x[i] - rep.mean);
    std::vector<double> sorted = dev;
    std::sort(sorted.begin(), sorted.end());

    // Sub-Gaussian tail P(|X| > s) = exp(-s^2 / 2 sigma^2) puts the p-quantile
    // at sigma * sqrt(-2 ln(1 - p)); fit sigma through the origin.
    double num = 0.0, den = 0.0;
    for (double p : {0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99}) {
        const double s = quantile_sorted(sorted, p);
        const double z = std::sqrt(-2.0 * std::log(1.0 - p));
        rep.quantiles.emplace_back(p, s);
        num += s * z;
        den += z * z;
    }
    rep.sigma_hat = num / den;
    rep.normalized = fn.lipschitz > 0.0 ? rep.sigma_hat * std::sqrt(static_cast<double>(fn.dim)) / fn.lipschitz : 0.0;
    std::size_t exceed = 0;
    for (double v : dev) exceed += v > 3.0 * rep.sigma_hat ? 1 : 0;
    rep.exceedance_3sigma = rep.sigma_hat > 0.0 ? static_cast<double>(exceed) / static_cast<double>(n_samples) : 0.0;

    const double lo = -sorted.back(), hi = sorted.back();
    constexpr std::size_t kBins = 20;
    rep.histogram_counts.assign(kBins, 0);
    for (std::size_t k = 0; k <= kBins; ++k) rep.histogram_edges.push_back(lo + (hi - lo) * static_cast<double>(k) / kBins);
    for (double v : x) {
        const double c = v - rep.mean;
        std::size_t bin = hi > lo ? static_cast<std::size_t>((c - lo) / (hi - lo) * kBins) : 0;
        rep.histogram_counts[std::min(bin, kBins - 1)]++;
    }
    return rep;
}

}  // namespace replab
