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

#include "stabsim/channel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace stabsim
{

/// Exponent triple of the power-law scaling regime: K = M^p, L = M^q,
/// R/H = M^{-r}.
struct ScalingPoint
{
    double p = 0.5;
    double q = 0.0;
    double r = 0.0;
    ArrayKind array_kind = ArrayKind::ULA;

    void validate() const
    {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("ScalingPoint: p must lie in [0, 1]");
        if (!(q >= 0.0))
            throw std::invalid_argument("ScalingPoint: q must be nonnegative");
        if (!(r >= 0.0 && r < 1.0))
            throw std::invalid_argument("ScalingPoint: r must lie in [0, 1)");
        if (array_kind == ArrayKind::UPA && !(r < 0.5))
            throw std::invalid_argument("ScalingPoint: UPA analysis requires r < 1/2");
    }

    bool stab() const { return q > 0.0; }
};

struct LoadSample
{
    std::size_t m = 0;
    std::size_t k_users = 0;
    std::size_t n_bins = 0;
    std::size_t max_load = 0;
    double lambda_m = 0.0;          // K / B
    std::size_t out_of_support = 0; // points clamped into an edge bin
    std::size_t crowded_bin = 0;    // flat index of the first bin reaching max_load
};

/// K = floor(M^p), at least 1.
inline std::size_t user_count(double p, std::size_t m)
{
    return std::max<std::size_t>(1, robust_floor(std::pow(static_cast<double>(m), p)));
}

/// L = max(1, floor(M^q)).
inline std::size_t snapshot_count(double q, std::size_t m)
{
    return std::max<std::size_t>(1, robust_floor(std::pow(static_cast<double>(m), q)));
}

/// Resolution bins covering the frequency support: floor(M^{1-r}) for a ULA,
/// floor(M^{1-2r}) for a UPA, times floor(M^q) space-Doppler cells under STAB.
inline std::size_t bin_count(const ScalingPoint &point, std::size_t m)
{
    point.validate();
    const double md = static_cast<double>(m);
    const double exponent = point.array_kind == ArrayKind::ULA ? 1.0 - point.r : 1.0 - 2.0 * point.r;
    std::size_t b = std::max<std::size_t>(1, robust_floor(std::pow(md, exponent)));
    if (point.stab())
        b *= snapshot_count(point.q, m);
    return b;
}

/// One histogram axis: \c count half-open cells of \c width starting at
/// \c lower; the last cell is closed so the upper endpoint is covered.
struct BinAxis
{
    double lower = 0.0;
    double width = 1.0;
    std::size_t count = 1;
};

/// Histograms D-dimensional points and reports the largest cell occupancy.
template <std::size_t D>
LoadSample max_load(std::span<const std::array<double, D>> points, const std::array<BinAxis, D> &axes)
{
    std::size_t cells = 1;
    for (const auto &ax : axes)
    {
        if (ax.count == 0 || !(ax.width > 0.0))
            throw InvalidDimension("max_load: bin axes need positive counts and widths");
        cells *= ax.count;
    }
    std::vector<std::size_t> load(cells, 0);
    LoadSample s;
    s.k_users = points.size();
    s.n_bins = cells;
    s.lambda_m = static_cast<double>(points.size()) / static_cast<double>(cells);
    for (const auto &pt : points)
    {
        std::size_t flat = 0;
        bool clamped = false;
        for (std::size_t d = 0; d < D; ++d)
        {
            const auto &ax = axes[d];
            const double pos = (pt[d] - ax.lower) / ax.width;
            long long idx = static_cast<long long>(std::floor(pos));
            if (idx == static_cast<long long>(ax.count) && pos <= static_cast<double>(ax.count) + 1e-12)
                idx = static_cast<long long>(ax.count) - 1; // closed right edge
            if (idx < 0 || idx >= static_cast<long long>(ax.count) || !std::isfinite(pos))
            {
                clamped = true;
                idx = std::clamp<long long>(std::isfinite(pos) ? idx : 0, 0, static_cast<long long>(ax.count) - 1);
            }
            flat = flat * ax.count + static_cast<std::size_t>(idx);
        }
        if (clamped)
            ++s.out_of_support;
        ++load[flat];
    }
    for (std::size_t b = 0; b < cells; ++b)
        if (load[b] > s.max_load)
        {
            s.max_load = load[b];
            s.crowded_bin = b;
        }
    return s;
}

/// Bin index of every point along the flattened grid (same clamping as max_load).
template <std::size_t D>
std::vector<std::size_t> bin_indices(std::span<const std::array<double, D>> points, const std::array<BinAxis, D> &axes)
{
    std::vector<std::size_t> out;
    out.reserve(points.size());
    for (const auto &pt : points)
    {
        std::size_t flat = 0;
        for (std::size_t d = 0; d < D; ++d)
        {
            const auto &ax = axes[d];
            const double pos = (pt[d] - ax.lower) / ax.width;
            long long idx = std::isfinite(pos) ? static_cast<long long>(std::floor(pos)) : 0;
            idx = std::clamp<long long>(idx, 0, static_cast<long long>(ax.count) - 1);
            flat = flat * ax.count + static_cast<std::size_t>(idx);
        }
        out.push_back(flat);
    }
    return out;
}

enum class Regime
{
    Sparse,
    Critical,
    Dense
};

inline const char *to_string(Regime r)
{
    switch (r)
    {
    case Regime::Sparse:
        return "sparse";
    case Regime::Critical:
        return "critical";
    case Regime::Dense:
        return "dense";
    }
    return "?";
}

struct RegimeInfo
{
    Regime regime = Regime::Sparse;
    std::string rate_scaling; // upper scaling of the mean sum rate
    double excess = 0.0;      // crowding excess: p + r - 1 (ULA) or p + 2r - 1 (UPA), minus q under STAB
    bool stab = false;
};

namespace detail
{
inline constexpr double kExponentTol = 1e-12;

inline double spatial_excess(const ScalingPoint &pt)
{
    return pt.array_kind == ArrayKind::ULA ? pt.p + pt.r - 1.0 : pt.p + 2.0 * pt.r - 1.0;
}
} // namespace detail

/// Sparse / critical / dense classification with the matching upper scaling
/// law of the mean sum rate.
inline RegimeInfo classify_regime(const ScalingPoint &pt)
{
    pt.validate();
    RegimeInfo info;
    info.stab = pt.stab();
    const double delta = detail::spatial_excess(pt);
    info.excess = delta - pt.q;
    const double e = info.excess;
    if (e > detail::kExponentTol)
    {
        info.regime = Regime::Dense;
        info.rate_scaling = "->0";
        return info;
    }
    info.regime = e < -detail::kExponentTol ? Regime::Sparse : Regime::Critical;
    if (info.stab)
    {
        info.rate_scaling = "M^(p-q) log M";
        return info;
    }
    if (pt.array_kind == ArrayKind::UPA || info.regime == Regime::Sparse)
    {
        info.rate_scaling = "M^p log M";
        return info;
    }
    // ULA critical line p = 1 - r splits on r.
    if (pt.r < 0.5 - detail::kExponentTol)
        info.rate_scaling = "M^(r+o(1))";
    else if (pt.r > 0.5 + detail::kExponentTol)
        info.rate_scaling = "M^(1-r+o(1)) log M";
    else
        info.rate_scaling = "M^(1/2+o(1))";
    return info;
}

/// Order-of-magnitude prediction of the max load for plotting: 1 in the
/// sparse regime (the O(1) constant is unspecified, so this is only a
/// placeholder), log M / log log M at criticality, M^{excess} when dense.
inline double predicted_max_load(const ScalingPoint &pt, std::size_t m)
{
    const RegimeInfo info = classify_regime(pt);
    const double md = static_cast<double>(m);
    switch (info.regime)
    {
    case Regime::Sparse:
        return 1.0;
    case Regime::Critical:
        return std::log(md) / std::log(std::log(md));
    case Regime::Dense:
        return std::pow(md, info.excess);
    }
    return 1.0;
}

} // namespace stabsim
