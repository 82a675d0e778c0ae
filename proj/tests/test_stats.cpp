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


#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "replab/error.hpp"
#include "replab/parallel.hpp"
#include "replab/rng.hpp"
#include "replab/stats.hpp"

using namespace replab;

TEST(Stats, CompensatedSumSurvivesCancellation) {
    const std::vector<double> v{1e16, 1.0, -1e16, 1.0};
    EXPECT_EQ(compensated_sum(v), 2.0);
}

TEST(Stats, MeanEstimateStandardError) {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    const Estimate e = mean_estimate(v);
    EXPECT_DOUBLE_EQ(e.mean, 2.5);
    // sample sd sqrt(5/3), se = sd / 2
    EXPECT_NEAR(e.se, std::sqrt(5.0 / 3.0) / 2.0, 1e-12);
    EXPECT_EQ(e.n, 4u);
}

TEST(Stats, WilsonIntervalReferenceValue) {
    // 50/100 at z = 1.96: centre 0.5, half width 1.96 * sqrt(0.25/100 + 1.96^2/40000) / (1 + 1.96^2/100)
    const Interval iv = wilson_interval(50, 100);
    const double z = 1.959963984540054;
    const double half = z * std::sqrt(0.0025 + z * z / 40000.0) / (1.0 + z * z / 100.0);
    EXPECT_NEAR(iv.lo, 0.5 - half, 1e-12);
    EXPECT_NEAR(iv.hi, 0.5 + half, 1e-12);
    const Interval all = wilson_interval(10, 10);
    EXPECT_NEAR(all.hi, 1.0, 1e-12);
    EXPECT_LT(all.lo, 1.0);
}

TEST(Stats, PowerLawFitRecoversExactExponent) {
    const std::vector<double> x{2, 4, 8, 16};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 * std::pow(v, -2.0));
    const PowerLawFit f = fit_power_law(x, y);
    EXPECT_NEAR(f.slope, -2.0, 1e-12);
    EXPECT_NEAR(f.intercept, std::log(3.0), 1e-12);
    EXPECT_LT(f.slope_se, 1e-10);
    EXPECT_THROW(fit_power_law(std::vector<double>{1, 2}, std::vector<double>{1, 2}), ArgumentError);
}

TEST(Stats, QuantileInterpolates) {
    const std::vector<double> s{0.0, 1.0, 2.0, 3.0, 4.0};
    EXPECT_DOUBLE_EQ(quantile_sorted(s, 0.5), 2.0);
    EXPECT_DOUBLE_EQ(quantile_sorted(s, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(quantile_sorted(s, 1.0), 4.0);
}

TEST(Rng, SeededStreamsAreReproducibleAndDistinct) {
    Rng a(42), b(42);
    for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
    const Rng base(7);
    Rng s0 = base.stream(0), s0_again = base.stream(0), s1 = base.stream(1);
    const auto x = s0.next_u64();
    EXPECT_EQ(x, s0_again.next_u64());
    EXPECT_NE(x, s1.next_u64());
}

TEST(Rng, ComplexGaussianHasUnitSecondMoment) {
    Rng rng(9);
    double acc = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) acc += std::norm(rng.complex_gaussian());
    EXPECT_NEAR(acc / n, 1.0, 0.01);
}

TEST(Parallel, ResultsDoNotDependOnWorkerCount) {
    auto run = [](unsigned workers) {
        std::vector<std::uint64_t> out(64);
        const Rng base(11);
        parallel_for(out.size(), workers, [&](std::size_t i) {
            Rng r = base.stream(i);
            out[i] = r.next_u64();
        });
        return out;
    };
    EXPECT_EQ(run(1), run(4));
}

TEST(Parallel, PropagatesExceptions) {
    EXPECT_THROW(parallel_for(8, 2, [](std::size_t i) {
                     if (i == 5) throw ArgumentError("boom");
                 }),
                 ArgumentError);
}
