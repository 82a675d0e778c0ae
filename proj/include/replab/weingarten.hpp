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

#ifndef REPLAB_WEINGARTEN_HPP
#define REPLAB_WEINGARTEN_HPP

#include <gmpxx.h>

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "replab/linalg.hpp"
#include "replab/permutation.hpp"
#include "replab/rng.hpp"

namespace replab {

inline constexpr unsigned kMaxWeingartenDegree = 6;

/// Exact Weingarten values for S_m at dimension d, keyed by cycle type.
class WeingartenTable {
   public:
    unsigned m() const { return m_; }
    unsigned d() const { return d_; }

    /// Values keyed by partition_key of the cycle type ("2+1", ...).
    const std::map<std::string, mpq_class> &values() const { return values_; }
    const mpq_class &exact(const Permutation &p) const;
    double value(const Permutation &p) const { return by_rank_[p.rank()]; }

    /// Double values indexed by Permutation::rank().
    const std::vector<double> &by_rank() const { return by_rank_; }

    /// Sum over S_m of |Wg(p, d)|, exact.
    mpq_class absolute_sum() const;

    /// (d-m)!/d!, the value absolute_sum() must equal.
    mpq_class absolute_sum_closed_form() const;

   private:
    friend std::shared_ptr<const WeingartenTable> build_weingarten_table(unsigned m, unsigned d);
    unsigned m_ = 0;
    unsigned d_ = 0;
    std::map<std::string, mpq_class> values_;
    std::vector<double> by_rank_;
};

/// Solves sum_tau Wg(sigma tau^-1) d^{#(tau pi^-1)} = [sigma == pi] exactly.
/// Requires 1 <= m <= 6 and d >= m (otherwise UnsupportedRegimeError).
/// Uncached; prefer weingarten_table.
std::shared_ptr<const WeingartenTable> build_weingarten_table(unsigned m, unsigned d);

/// Cached, thread-safe accessor keyed by (m, d).
std::shared_ptr<const WeingartenTable> weingarten_table(unsigned m, unsigned d);

/// Index pattern for E[U_{i1 j1} ... U_{im jm} Udag_{i'1 j'1} ... Udag_{i'm j'm}].
struct MomentIndices {
    std::vector<unsigned> i, j, i_dag, j_dag;
};

/// Exact Haar moment of matrix entries; the table's m must match the index
/// length.
Complex haar_moment_entries(const WeingartenTable &table, const MomentIndices &idx);

/// E_Haar[tr(A U B U^dag)^m], exact up to floating-point evaluation of the
/// traces.
Complex haar_expect_trace_power(const ComplexMatrix &a, const ComplexMatrix &b, unsigned m);

/// Haar-random unitary (Gaussian QR with the R-diagonal phase fix).
UnitaryMatrix haar_sample(Index d, Rng &rng);

struct MontanaroReport {
    unsigned m = 0;
    unsigned d = 0;
    std::map<std::string, double> ratios;  // |Wg| d^{2m - #p} per cycle type
    double max_ratio = 0.0;
    double constant = 20.0;
    bool bounded = false;
};

/// Scaled Weingarten magnitudes |Wg(p,d)| d^{2m-#p}. Requires m <= d^{2/3}.
MontanaroReport montanaro_bound_check(unsigned m, unsigned d, double constant = 20.0);

/// "p/q" (or "p" when q = 1).
std::string rational_string(const mpq_class &q);

}  // namespace replab

#endif  // REPLAB_WEINGARTEN_HPP
