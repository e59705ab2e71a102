// SPDX-License-Identifier: Apache-2.0
//
// stabsim: multiuser MIMO simulation for LoS-dominant LEO satellite downlinks
// Copyright (C) 2026 The stabsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace stabsim::experiments
{

/// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

struct Summary
{
    std::size_t count = 0;
    double mean = 0.0;
    double stddev = 0.0; // sample standard deviation
    double ci95 = 0.0;   // half-width of the normal-approximation interval
};

/// Summary statistics accumulated in index order.
inline Summary summarize(std::span<const double> x)
{
    Summary s;
    s.count = x.size();
    if (x.empty())
        return s;
    double sum = 0.0;
    for (double v : x)
        sum += v;
    s.mean = sum / static_cast<double>(x.size());
    if (x.size() > 1)
    {
        double ss = 0.0;
        for (double v : x)
            ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(x.size() - 1));
        s.ci95 = kZ95 * s.stddev / std::sqrt(static_cast<double>(x.size()));
    }
    return s;
}

/// Nearest-rank quantile of an unsorted sample, 0 <= prob <= 1.
inline double quantile(std::vector<double> x, double prob)
{
    if (x.empty())
        throw std::invalid_argument("quantile: empty sample");
    std::sort(x.begin(), x.end());
    const double rank = std::ceil(prob * static_cast<double>(x.size()));
    const std::size_t idx = rank < 1.0 ? 0 : static_cast<std::size_t>(rank) - 1;
    return x[std::min(idx, x.size() - 1)];
}

/// Fraction of the sample at or below \p v.
inline double empirical_cdf(const std::vector<double> &sorted, double v)
{
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), v);
    return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

struct LineFit
{
    double slope = 0.0;
    double intercept = 0.0;
};

/// Ordinary least squares y = intercept + slope x.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need at least two paired points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("fit_line: abscissae are all equal");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    return f;
}

} // namespace stabsim::experiments
