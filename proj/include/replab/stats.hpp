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

#ifndef REPLAB_STATS_HPP
#define REPLAB_STATS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace replab {

/// A sampled quantity with its standard error.
struct Estimate {
    double mean = 0.0;
    double se = 0.0;
    std::size_t n = 0;
};

/// Neumaier-compensated sum; order of `values` is the order of summation.
double compensated_sum(std::span<const double> values);

/// Sample mean and standard error of the mean.
Estimate mean_estimate(std::span<const double> values);

/// Delete-one jackknife standard error for a statistic of B block values.
/// `leave_one_out[b]` is the statistic recomputed without block b.
double jackknife_se(std::span<const double> leave_one_out);

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

/// Least-squares fit of log(y) = slope * log(x) + intercept.
struct PowerLawFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
    double ci_lo = 0.0;  // 95% Student-t interval on the slope
    double ci_hi = 0.0;
    std::size_t points = 0;
};
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);

/// Empirical quantile with linear interpolation; `sorted` must be ascending.
double quantile_sorted(std::span<const double> sorted, double p);

}  // namespace replab

#endif  // REPLAB_STATS_HPP
