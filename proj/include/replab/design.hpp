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

#ifndef REPLAB_DESIGN_HPP
#define REPLAB_DESIGN_HPP

#include <functional>
#include <string>
#include <vector>

#include "replab/circuits.hpp"
#include "replab/linalg.hpp"
#include "replab/rng.hpp"
#include "replab/stats.hpp"

namespace replab {

inline constexpr std::size_t kJackknifeBlock = 100;

/// Operator on (C^d)^{(x)t} in whichever form makes conjugation by U^{(x)t}
/// cheapest.
struct Probe {
    enum class Form { Dense, Product, Outer };
    std::string label;
    Form form = Form::Dense;
    Index local_dim = 0;
    unsigned t = 0;
    ComplexMatrix dense;                // Dense
    std::vector<ComplexMatrix> factors;  // Product: factors[0] is the most significant
    ComplexVector left, right;          // Outer: |left><right|

    static Probe from_dense(std::string label, ComplexMatrix m, Index local_dim, unsigned t);
    static Probe product(std::string label, std::vector<ComplexMatrix> factors);
    static Probe outer(std::string label, ComplexVector left, ComplexVector right, Index local_dim, unsigned t);

    ComplexMatrix to_dense() const;
    /// U^{(x)t} X U^{dag (x)t}.
    ComplexMatrix conjugated(const UnitaryMatrix &u) const;
};

/// Z^{(x)t} (alternating-sign diagonal when d is not a power of two), two
/// random pure-state projectors, and the elementary matrices |0..0><0..0| and
/// |0..0><d-1..d-1|. Random members are drawn from `rng`.
std::vector<Probe> default_probes(Index d, unsigned t, Rng &rng);

/// Sample mean of U^{(x)t} X U^{dag (x)t}. Sampling is split into blocks with
/// derived streams, so the result does not depend on the worker count.
ComplexMatrix empirical_moment_apply(const CircuitEnsemble &ensemble, const Probe &input, std::size_t n_samples, Rng &rng);

/// Exact Haar twirl sum_{s,t} Wg(s t^-1, d) tr(P_s^dag X) P_t. Needs d >= t
/// and t <= 6.
ComplexMatrix exact_haar_moment_apply(const ComplexMatrix &input, Index d, unsigned t);

struct ProbeDistance {
    std::string label;
    double distance_sq = 0.0;  // unbiased estimate of ||E[twirl] - Haar twirl||_HS^2
    double distance_sq_se = 0.0;
};

struct MomentReport {
    unsigned t = 0;
    std::string ensemble;
    std::size_t n_samples = 0;
    std::vector<ProbeDistance> probes;
    std::string worst_probe;
    double distance_hs = 0.0;  // signed square root of the worst distance_sq
    double distance_se = 0.0;
    double distance_sq = 0.0;
    double distance_sq_se = 0.0;
    double frame_potential = 0.0;
    double frame_potential_se = 0.0;
    double haar_frame_potential = 0.0;
};

/// Max over probes of the HS distance between the ensemble's and Haar's
/// t-fold twirl outputs, with delete-one-block jackknife errors. Frame
/// potential fields are left at zero.
MomentReport design_distance(const CircuitEnsemble &ensemble, unsigned t, const std::vector<Probe> &probes,
                             std::size_t n_samples, Rng &rng);

/// E|tr(U^dag V)|^{2t} over independent pairs.
Estimate frame_potential(const CircuitEnsemble &ensemble, unsigned t, std::size_t n_pairs, Rng &rng);

/// E_Haar|tr U|^{2t} = t! sum_p Wg(p, d) d^{#p}, which equals t!. Needs d >= t.
double haar_frame_potential(Index d, unsigned t);

/// Real-valued function on U(d) with a known Lipschitz constant (HS metric).
struct LipschitzFunction {
    std::string name;
    Index dim = 0;
    std::function<double(const UnitaryMatrix &)> f;
    double lipschitz = 0.0;
};

/// U -> scale * Re tr(A U B U^dag); Lipschitz constant 2 scale ||A||_2 ||B||_inf.
LipschitzFunction trace_form(const ComplexMatrix &a, const ComplexMatrix &b, double scale = 1.0);
LipschitzFunction constant_function(Index d, double value);

struct TailReport {
    std::string name;
    Index dim = 0;
    std::size_t n_samples = 0;
    double mean = 0.0;
    double sigma_hat = 0.0;   // quantile-regression fit of the sub-Gaussian scale
    double lipschitz = 0.0;
    double normalized = 0.0;  // sigma_hat * sqrt(d) / L
    double exceedance_3sigma = 0.0;
    std::vector<std::pair<double, double>> quantiles;  // (p, |x - mean| quantile)
    std::vector<double> histogram_edges;
    std::vector<std::size_t> histogram_counts;
};

/// Samples f(U) for Haar U and fits P(|f - mean| > s) ~ exp(-s^2 / 2 sigma^2).
TailReport concentration_probe(const LipschitzFunction &fn, std::size_t n_samples, Rng &rng);

}  // namespace replab

#endif  // REPLAB_DESIGN_HPP
