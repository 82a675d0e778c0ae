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

#ifndef REPLAB_LINALG_HPP
#define REPLAB_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace replab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Tolerances shared by every validating constructor.
inline constexpr double kUnitaryTol = 1e-10;     // per unit of dimension, HS norm of U^dag U - I
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kNormTol = 1e-10;

/// Global guard on dense allocations; default 2 GiB. Thread-safe.
std::size_t memory_budget_bytes();
void set_memory_budget_bytes(std::size_t bytes);

/// Throws ResourceError when a rows x cols complex matrix would exceed the
/// budget (or overflow the index type).
void require_matrix_budget(std::size_t rows, std::size_t cols, const char *what);

/// Integer power with overflow/budget checking; used for d^k dimensions.
std::size_t checked_pow(std::size_t base, unsigned exp, const char *what);

void require_finite(const ComplexMatrix &m, const char *what);
bool is_hermitian(const ComplexMatrix &m, double tol = kHermitianTol);

class UnitaryMatrix {
   public:
    explicit UnitaryMatrix(ComplexMatrix m);
    static UnitaryMatrix identity(Index dim);

    Index dim() const { return m_.rows(); }
    const ComplexMatrix &matrix() const { return m_; }
    UnitaryMatrix adjoint() const;
    UnitaryMatrix operator*(const UnitaryMatrix &rhs) const;

    /// Multiplies by a global phase so the first entry (column-major scan)
    /// with magnitude above 1e-10 is real and positive.
    UnitaryMatrix canonical_phase() const;

   private:
    struct Trusted {};
    UnitaryMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

class DensityMatrix {
   public:
    explicit DensityMatrix(ComplexMatrix m);
    static DensityMatrix maximally_mixed(Index dim);
    static DensityMatrix pure(const ComplexVector &psi);

    Index dim() const { return m_.rows(); }
    const ComplexMatrix &matrix() const { return m_; }
    double min_eigenvalue() const { return min_eig_; }

   private:
    ComplexMatrix m_;
    double min_eig_ = 0.0;
};

class PureState {
   public:
    explicit PureState(ComplexVector amplitudes);
    /// Normalizes first; rejects the zero vector.
    static PureState normalized(ComplexVector v);
    static PureState basis(Index dim, Index i);

    Index dim() const { return v_.size(); }
    const ComplexVector &amplitudes() const { return v_; }
    DensityMatrix density() const { return DensityMatrix::pure(v_); }

   private:
    ComplexVector v_;
};

ComplexMatrix tensor_product(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix tensor_power(const ComplexMatrix &a, unsigned k);

/// Reduced operator on the factors listed in `keep` (any order; the output
/// keeps them in ascending factor order).
ComplexMatrix partial_trace(const ComplexMatrix &m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

enum class Schatten { One, Two, Infinity };
double schatten_norm(const ComplexMatrix &m, Schatten p);

struct HermitianSpectrum {
    Eigen::VectorXd values;  // ascending
    ComplexMatrix vectors;   // columns
};
HermitianSpectrum hermitian_eig(const ComplexMatrix &m);

struct HelstromResult {
    ComplexMatrix projector;  // onto the nonnegative eigenspace of a - b
    double success_prob = 0.5;
};
HelstromResult helstrom_measurement(const DensityMatrix &a, const DensityMatrix &b);

/// op^{(x)k} applied to a vector on (C^d)^{(x)k} without materializing the
/// tensor power. `op` must be d x d.
ComplexVector apply_tensor_power(const ComplexMatrix &op, unsigned k, const ComplexVector &psi);

/// Applies `op` to tensor factor `slot` of a vector on (C^d)^{(x)k}; slot 0
/// is the most significant factor.
ComplexVector apply_on_slot(const ComplexMatrix &op, unsigned slot, unsigned k, const ComplexVector &psi);

/// <psi| op^{(x)k} |psi>.
Complex tensor_power_expectation(const ComplexMatrix &op, unsigned k, const ComplexVector &psi);

}  // namespace replab

#endif  // REPLAB_LINALG_HPP
