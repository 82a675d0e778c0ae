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

#include "replab/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>

#include "replab/error.hpp"

namespace replab {

namespace {

std::atomic<std::size_t> g_memory_budget{std::size_t{2} << 30};

}  // namespace

std::size_t memory_budget_bytes() { return g_memory_budget.load(std::memory_order_relaxed); }

void set_memory_budget_bytes(std::size_t bytes) { g_memory_budget.store(bytes, std::memory_order_relaxed); }

void require_matrix_budget(std::size_t rows, std::size_t cols, const char *what) {
    constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
    const std::size_t elem = sizeof(Complex);
    if (rows != 0 && cols > kMax / rows / elem) {
        throw ResourceError(std::string(what) + ": dimension overflow");
    }
    const std::size_t bytes = rows * cols * elem;
    if (bytes > memory_budget_bytes()) {
        std::ostringstream os;
        os << what << ": " << rows << "x" << cols << " complex matrix needs " << bytes
           << " bytes, budget is " << memory_budget_bytes();
        throw ResourceError(os.str());
    }
}

std::size_t checked_pow(std::size_t base, unsigned exp, const char *what) {
    std::size_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::size_t>::max() / base) {
            throw ResourceError(std::string(what) + ": dimension overflow");
        }
        r *= base;
    }
    return r;
}

void require_finite(const ComplexMatrix &m, const char *what) {
    if (!m.allFinite()) {
        throw ValidationError(std::string(what) + ": non-finite entry");
    }
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).norm() <= tol * std::max<double>(1.0, m.rows());
}

// ---------------------------------------------------------------------------

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols()) {
        throw ValidationError("unitary must be square and nonempty");
    }
    require_finite(m_, "unitary");
    const Index d = m_.rows();
    const double residual = (m_.adjoint() * m_ - ComplexMatrix::Identity(d, d)).norm();
    if (residual > kUnitaryTol * static_cast<double>(d)) {
        throw ValidationError("matrix is not unitary", residual);
    }
}

UnitaryMatrix UnitaryMatrix::identity(Index dim) {
    return UnitaryMatrix(ComplexMatrix::Identity(dim, dim), Trusted{});
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(m_.adjoint(), Trusted{}); }

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix &rhs) const {
    if (rhs.dim() != dim()) throw ArgumentError("unitary product: dimension mismatch");
    return UnitaryMatrix(m_ * rhs.m_, Trusted{});
}

UnitaryMatrix UnitaryMatrix::canonical_phase() const {
    const Complex *p = m_.data();
    for (Index i = 0; i < m_.size(); ++i) {
        const double a = std::abs(p[i]);
        if (a > 1e-10) {
            const Complex phase = std::conj(p[i]) / a;
            return UnitaryMatrix(m_ * phase, Trusted{});
        }
    }
    return *this;
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols()) {
        throw ValidationError("density matrix must be square and nonempty");
    }
    require_finite(m_, "density matrix");
    const double herm = (m_ - m_.adjoint()).norm();
    if (herm > kHermitianTol) throw ValidationError("density matrix is not Hermitian", herm);
    const double tr_err = std::abs(m_.trace() - Complex(1.0));
    if (tr_err > kTraceTol) throw ValidationError("density matrix trace differs from 1", tr_err);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
    min_eig_ = es.eigenvalues()(0);
    if (min_eig_ < -kPsdTol) throw ValidationError("density matrix has a negative eigenvalue", min_eig_);
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::pure(const ComplexVector &psi) { return DensityMatrix(psi * psi.adjoint()); }

PureState::PureState(ComplexVector amplitudes) : v_(std::move(amplitudes)) {
    if (v_.size() == 0) throw ValidationError("pure state must be nonempty");
    if (!v_.allFinite()) throw ValidationError("pure state: non-finite amplitude");
    const double err = std::abs(v_.norm() - 1.0);
    if (err > kNormTol) throw ValidationError("pure state is not normalized", err);
}

PureState PureState::normalized(ComplexVector v) {
    const double n = v.norm();
    if (!(n > 0.0)) throw ArgumentError("cannot normalize the zero vector");
    return PureState(v / n);
}

PureState PureState::basis(Index dim, Index i) {
    if (i < 0 || i >= dim) throw ArgumentError("basis index out of range");
    ComplexVector v = ComplexVector::Zero(dim);
    v(i) = 1.0;
    return PureState(std::move(v));
}

// ---------------------------------------------------------------------------

ComplexMatrix tensor_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    const auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
    const auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
    require_matrix_budget(rows, cols, "tensor_product");
    ComplexMatrix out(static_cast<Index>(rows), static_cast<Index>(cols));
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix tensor_power(const ComplexMatrix &a, unsigned k) {
    if (k == 0) return ComplexMatrix::Identity(1, 1);
    checked_pow(static_cast<std::size_t>(a.rows()), k, "tensor_power");
    checked_pow(static_cast<std::size_t>(a.cols()), k, "tensor_power");
    ComplexMatrix out = a;
    for (unsigned i = 1; i < k; ++i) out = tensor_product(out, a);
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
    if (m.rows() != m.cols()) throw ArgumentError("partial_trace: matrix must be square");
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d == 0) throw ArgumentError("partial_trace: zero factor dimension");
        total *= d;
    }
    if (total != static_cast<std::size_t>(m.rows())) {
        throw ArgumentError("partial_trace: product of dims does not match matrix dimension");
    }
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t k : keep) {
        if (k >= dims.size() || kept[k]) throw ArgumentError("partial_trace: bad keep index");
        kept[k] = true;
    }
    std::size_t kept_dim = 1;
    for (std::size_t f = 0; f < dims.size(); ++f) {
        if (kept[f]) kept_dim *= dims[f];
    }
    const std::size_t traced_dim = total / kept_dim;

    // Split every full index into (kept part, traced part), both mixed-radix
    // with the most significant factor first.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> groups(traced_dim);
    std::vector<std::size_t> digits(dims.size());
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rem = i;
        for (std::size_t f = dims.size(); f-- > 0;) {
            digits[f] = rem % dims[f];
            rem /= dims[f];
        }
        std::size_t ki = 0, ti = 0;
        for (std::size_t f = 0; f < dims.size(); ++f) {
            if (kept[f]) {
                ki = ki * dims[f] + digits[f];
            } else {
                ti = ti * dims[f] + digits[f];
            }
        }
        groups[ti].emplace_back(i, ki);
    }
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Index>(kept_dim), static_cast<Index>(kept_dim));
    for (const auto &g : groups) {
        for (const auto &[i, ki] : g) {
            for (const auto &[j, kj] : g) {
                out(static_cast<Index>(ki), static_cast<Index>(kj)) += m(static_cast<Index>(i), static_cast<Index>(j));
            }
        }
    }
    return out;
}

HermitianSpectrum hermitian_eig(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) throw ArgumentError("hermitian_eig: matrix must be square");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
    if (es.info() != Eigen::Success) throw InternalError("hermitian_eig: eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

double schatten_norm(const ComplexMatrix &m, Schatten p) {
    if (m.rows() != m.cols()) throw ArgumentError("schatten_norm: matrix must be square");
    if (p == Schatten::Two) return m.norm();
    Eigen::VectorXd sv;
    if (is_hermitian(m, 1e-12)) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
        sv = es.eigenvalues().cwiseAbs();
    } else {
        Eigen::JacobiSVD<ComplexMatrix> svd(m);
        sv = svd.singularValues();
    }
    if (sv.size() == 0) return 0.0;
    return p == Schatten::One ? sv.sum() : sv.maxCoeff();
}

HelstromResult helstrom_measurement(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.dim() != b.dim()) throw ArgumentError("helstrom_measurement: dimension mismatch");
    const ComplexMatrix diff = a.matrix() - b.matrix();
    const HermitianSpectrum spec = hermitian_eig(diff);
    HelstromResult r;
    const Index d = a.dim();
    r.projector = ComplexMatrix::Zero(d, d);
    double trace_norm = 0.0;
    for (Index i = 0; i < d; ++i) {
        const double lam = spec.values(i);
        trace_norm += std::abs(lam);
        if (lam >= -1e-12) r.projector += spec.vectors.col(i) * spec.vectors.col(i).adjoint();
    }
    r.success_prob = std::clamp(0.5 + 0.25 * trace_norm, 0.5, 1.0);
    return r;
}

ComplexVector apply_on_slot(const ComplexMatrix &op, unsigned slot, unsigned k, const ComplexVector &psi) {
    const Index d = op.rows();
    if (op.cols() != d) throw ArgumentError("apply_on_slot: operator must be square");
    if (slot >= k) throw ArgumentError("apply_on_slot: slot out of range");
    const auto total = static_cast<Index>(checked_pow(static_cast<std::size_t>(d), k, "apply_on_slot"));
    if (psi.size() != total) throw ArgumentError("apply_on_slot: vector dimension mismatch");
    const auto low = static_cast<Index>(checked_pow(static_cast<std::size_t>(d), k - slot - 1, "apply_on_slot"));
    const Index high = total / (low * d);
    ComplexVector out(total);
    // View psi as a (high) x (d) x (low) tensor; contract the middle index.
    for (Index h = 0; h < high; ++h) {
        const Index base = h * d * low;
        Eigen::Map<const ComplexMatrix> in_block(psi.data() + base, low, d);
        Eigen::Map<ComplexMatrix> out_block(out.data() + base, low, d);
        out_block.noalias() = in_block * op.transpose();
    }
    return out;
}

ComplexVector apply_tensor_power(const ComplexMatrix &op, unsigned k, const ComplexVector &psi) {
    ComplexVector v = psi;
    for (unsigned s = 0; s < k; ++s) v = apply_on_slot(op, s, k, v);
    return v;
}

Complex tensor_power_expectation(const ComplexMatrix &op, unsigned k, const ComplexVector &psi) {
    return psi.dot(apply_tensor_power(op, k, psi));
}

}  // namespace replab
