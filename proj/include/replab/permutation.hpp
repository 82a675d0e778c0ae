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

#ifndef REPLAB_PERMUTATION_HPP
#define REPLAB_PERMUTATION_HPP

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "replab/linalg.hpp"

namespace replab {

inline constexpr unsigned kMaxEnumerationDegree = 9;

struct CycleDecomposition {
    std::vector<std::vector<unsigned>> cycles;  // each cycle starts at its smallest element
    unsigned cycle_count = 0;
    std::vector<unsigned> lengths;  // descending
};

/// Element of S_m acting on {0..m-1}; `images[i]` is p(i).
class Permutation {
   public:
    explicit Permutation(std::vector<unsigned> images);
    static Permutation identity(unsigned m);
    /// Transposition of a and b.
    static Permutation swap(unsigned m, unsigned a, unsigned b);
    /// Builds from disjoint cycles; unspecified points are fixed.
    static Permutation from_cycles(unsigned m, const std::vector<std::vector<unsigned>> &cycles);

    unsigned degree() const { return static_cast<unsigned>(images_.size()); }
    unsigned operator()(unsigned i) const { return images_[i]; }
    const std::vector<unsigned> &images() const { return images_; }

    /// (p * q)(i) = p(q(i)).
    Permutation operator*(const Permutation &q) const;
    Permutation inverse() const;
    bool operator==(const Permutation &o) const { return images_ == o.images_; }

    CycleDecomposition cycles() const;
    unsigned cycle_count() const;
    /// Cycle lengths joined by '+' in descending order, e.g. "2+1+1".
    std::string cycle_type_key() const;
    bool all_cycles_even() const;

    /// Position in the lexicographic enumeration of S_m (Lehmer code).
    std::size_t rank() const;

   private:
    std::vector<unsigned> images_;
};

unsigned cycle_count(const Permutation &p);

std::uint64_t factorial(unsigned m);

/// All m! permutations in lexicographic order of images. m <= 9.
std::vector<Permutation> enumerate_sym(unsigned m);

/// Integer partitions of m in descending lexicographic order, e.g. m=3:
/// {3}, {2,1}, {1,1,1}.
std::vector<std::vector<unsigned>> partitions(unsigned m);
std::string partition_key(const std::vector<unsigned> &parts);
/// Number of permutations with the given cycle type.
std::uint64_t class_size(const std::vector<unsigned> &parts);

/// Sum over S_m of d^{#p}, by enumeration; throws InternalError if it
/// disagrees with d(d+1)...(d+m-1).
mpz_class sum_d_power_cycles(unsigned m, unsigned d);
mpz_class sum_d_power_cycles_closed_form(unsigned m, unsigned d);
mpz_class sum_d_power_cycles_brute_force(unsigned m, unsigned d);

/// Sum of d^{#p} over permutations whose cycles all have even length, by
/// enumeration; cross-checked against (m-1)!! d(d+2)...(d+m-2) (0 for odd m).
mpz_class sum_d_power_even_cycles(unsigned m, unsigned d);
mpz_class sum_d_power_even_cycles_closed_form(unsigned m, unsigned d);
mpz_class sum_d_power_even_cycles_brute_force(unsigned m, unsigned d);

/// Dense d^m x d^m operator with P|i_0..i_{m-1}> = |i_{p^-1(0)}..i_{p^-1(m-1)}>.
/// Test oracle; production code uses trace_perm_tensor.
ComplexMatrix permutation_operator(const Permutation &p, unsigned d);

/// tr(P_p (A_0 (x) ... (x) A_{m-1})) by cycle products, never forming P_p.
Complex trace_perm_tensor(const Permutation &p, std::span<const ComplexMatrix> factors);

/// Applies P_p to the tensor factors at positions `slots` of a vector on
/// (C^d)^{(x)total}; slot 0 is the most significant factor.
ComplexVector apply_permutation(const Permutation &p, unsigned d, unsigned total,
                                std::span<const unsigned> slots, const ComplexVector &v);

}  // namespace replab

#endif  // REPLAB_PERMUTATION_HPP
