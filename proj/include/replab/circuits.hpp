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

#ifndef REPLAB_CIRCUITS_HPP
#define REPLAB_CIRCUITS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "replab/linalg.hpp"
#include "replab/rng.hpp"

namespace replab {

inline constexpr unsigned kMaxDenseQubits = 10;
inline constexpr unsigned kMaxCliffordQubits = 6;

/// Hermitian Pauli operator (-1)^sign * i^{popcount(x & z)} X^x Z^z on n
/// qubits. Qubit j lives at bit (n-1-j) of a basis index, so qubit 0 is the
/// most significant tensor factor.
struct SignedPauli {
    unsigned n = 0;
    std::uint32_t x = 0;
    std::uint32_t z = 0;
    bool sign = false;

    ComplexMatrix matrix() const;
    /// Applies the operator to a state vector of length 2^n.
    ComplexVector apply(const ComplexVector &v) const;
    bool commutes_with(const SignedPauli &o) const;
};

/// Returns the signed Pauli equal to `m` (within `tol` entrywise), if any.
std::optional<SignedPauli> as_signed_pauli(const ComplexMatrix &m, double tol = 1e-9);

/// True when U X_j U^dag and U Z_j U^dag are signed Paulis for every qubit.
bool is_clifford(const UnitaryMatrix &u);

/// Images of the generators X_j and Z_j under a Clifford.
struct CliffordTableau {
    unsigned n = 0;
    std::vector<SignedPauli> x_images;
    std::vector<SignedPauli> z_images;
};

/// Uniformly random tableau (symplectic part and signs).
CliffordTableau sample_clifford_tableau(unsigned n, Rng &rng);

/// Dense matrix of the Clifford with the given tableau, canonical phase.
UnitaryMatrix synthesize_clifford(const CliffordTableau &t);

/// Z^{(x)n}: diag((-1)^{popcount(i)}).
UnitaryMatrix pauli_z_n(unsigned n);

UnitaryMatrix sample_clifford(unsigned n, Rng &rng);

/// chi_D xi_D ... chi_1 xi_1 with xi uniform over {V (x) I, V^dag (x) I, I}
/// on qubit 0 and chi uniform Cliffords. depth 0 gives the identity.
UnitaryMatrix sample_interleaved(unsigned n, unsigned depth, const UnitaryMatrix &v, Rng &rng);

/// The T gate diag(1, e^{i pi/4}); verified non-Clifford on construction.
UnitaryMatrix default_v_gate();

/// rho = (I + eps U Z U^dag)/d with the observable U Z U^dag kept alongside.
struct StateFamilyMember {
    UnitaryMatrix u;
    double epsilon;
    ComplexMatrix observable;
    DensityMatrix rho;
};
StateFamilyMember build_state(const UnitaryMatrix &u, double epsilon);

/// U Z U^dag.
ComplexMatrix rotated_z(const UnitaryMatrix &u);

enum class EnsembleKind { Haar, UniformClifford, Interleaved, Identity, Finite };

/// Sampleable distribution over d x d unitaries.
class CircuitEnsemble {
   public:
    static CircuitEnsemble haar(unsigned n_qubits);
    /// Haar on an arbitrary dimension (not necessarily a power of two).
    static CircuitEnsemble haar_dim(Index d);
    static CircuitEnsemble uniform_clifford(unsigned n_qubits);
    static CircuitEnsemble interleaved(unsigned n_qubits, unsigned depth, UnitaryMatrix v, std::string v_name = "custom");
    static CircuitEnsemble identity(Index d);
    /// Finite support with the given probabilities (normalized internally).
    static CircuitEnsemble finite(std::vector<UnitaryMatrix> members, std::vector<double> weights);

    EnsembleKind kind() const { return kind_; }
    Index dim() const { return dim_; }
    unsigned n_qubits() const { return n_; }
    unsigned depth() const { return depth_; }
    bool finite_support() const { return kind_ == EnsembleKind::Identity || kind_ == EnsembleKind::Finite; }
    const std::vector<UnitaryMatrix> &members() const { return members_; }
    const std::vector<double> &weights() const { return weights_; }
    std::string name() const;

    UnitaryMatrix sample(Rng &rng) const;

    /// {"kind":"interleaved","n":4,"depth":6,"v":"T"} and friends; the seed
    /// field, when present, is handled by the caller.
    std::string to_json() const;
    static CircuitEnsemble from_json(const std::string &json);

   private:
    CircuitEnsemble(EnsembleKind kind, Index dim, unsigned n) : kind_(kind), dim_(dim), n_(n) {}
    EnsembleKind kind_;
    Index dim_;
    unsigned n_;
    unsigned depth_ = 0;
    std::optional<UnitaryMatrix> v_;
    std::string v_name_;
    std::vector<UnitaryMatrix> members_;
    std::vector<double> weights_;
};

}  // namespace replab

#endif  // REPLAB_CIRCUITS_HPP
