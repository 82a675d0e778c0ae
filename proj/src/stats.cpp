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

#include "replab/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "replab/error.hpp"

namespace replab {

double compensated_sum(std::span<const double> values) {
    double sum = 0.0;
    double c = 0.0;
    for (double v : values) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    return sum + c;
}

Estimate mean_estimate(std::span<const double> values) {
    Estimate e;
    e.n = values.size();
    if (e.n == 0) return e;
    e.mean = compensated_sum(values) / static_cast<double>(e.n);
    if (e.n < 2) return e;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) sq[i] = (values[i] - e.mean) * (values[i] - e.mean);
    const double var = compensated_sum(sq) / static_cast<double>(e.n - 1);
    e.se = std::sqrt(var / static_cast<double>(e.n));
    return e;
}

double jackknife_se(std::span<const double> leave_one_out) {
    const std::size_t b = leave_one_out.size();
    if (b < 2) return 0.0;
    const double mean = compensated_sum(leave_one_out) / static_cast<double>(b);
    double ss = 0.0;
    for (double v : leave_one_out) ss += (v - mean) * (v - mean);
    return std::sqrt(static_cast<double>(b - 1) / static_cast<double>(b) * ss);
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ArgumentError("fit_power_law: length mismatch");
    if (x.size() < 3) throw ArgumentError("fit_power_law: need at least 3 grid points");
    const std::size_t n = x.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ArgumentError("fit_power_law: values must be positive");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw ArgumentError("fit_power_law: grid has no spread");
    PowerLawFit f;
    f.points = n;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (f.intercept + f.slope * lx[i]);
        rss += r * r;
    }
    const double dof = static_cast<double>(n - 2);
    f.slope_se = dof > 0 ? std::sqrt(rss / dof / sxx) : 0.0;
    const boost::math::students_t dist(std::max(dof, 1.0));
    const double tq = boost::math::quantile(boost::math::complement(dist, 0.025));
    f.ci_lo = f.slope - tq * f.slope_se;
    f.ci_hi = f.slope + tq * f.slope_se;
    return f;
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw ArgumentError("quantile_sorted: empty sample");
    const double pos = std::clamp(p, 0.0, 1.0) * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace replab
