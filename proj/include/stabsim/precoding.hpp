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
#include "stabsim/linalg.hpp"

#include <limits>
#include <vector>

namespace stabsim
{

/// Normalized channel Gram: H^H H / M (spatial) or H^H H / (ML) (space-time).
struct GramMatrix
{
    CMatrix entries;
    double normalization = 1.0;

    std::size_t size() const { return static_cast<std::size_t>(entries.rows()); }
};

/// Instantaneous rate of one channel realization.
///
/// For ZF and STAB every user sees the same SINR, so sum_rate equals
/// prelog * K * log2(1 + sinr). For MRT and TDMA \c sinr holds the mean of
/// the per-user SINRs.
struct RateReport
{
    double sinr = 0.0;
    double sum_rate = 0.0;
    std::vector<double> per_user_rates;
    double prelog = 1.0;
    bool collapsed = false; // singular Gram, rate forced to 0
    double min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    std::size_t users = 0;
};

/// Raised by zf_sinr on a numerically singular Gram.
class SingularGramError : public std::runtime_error
{
  public:
    explicit SingularGramError(double min_eig)
        : std::runtime_error("singular Gram matrix (min eigenvalue " + std::to_string(min_eig) + ")"),
          min_eigenvalue_(min_eig)
    {
    }
    double min_eigenvalue() const { return min_eigenvalue_; }

  private:
    double min_eigenvalue_;
};

/// Relative eigenvalue floor below which a Gram counts as singular.
inline constexpr double kSingularityFloor = 1e-14;

inline GramMatrix gram(const ChannelMatrix &h)
{
    const double m = static_cast<double>(h.entries.rows());
    return {linalg::symmetrize(h.entries.adjoint() * h.entries / m), m};
}

inline GramMatrix gram(const SpaceTimeChannel &h)
{
    const double ml = static_cast<double>(h.entries.rows());
    return {linalg::symmetrize(h.entries.adjoint() * h.entries / ml), ml};
}

/// Spatial Gram straight from user states, without forming H.
/// Entry (j, k) is conj(beta_j) beta_k <a_j, a_k>.
inline GramMatrix spatial_gram(const std::vector<UserState> &users, const ArrayConfig &array)
{
    if (users.empty())
        throw InvalidDimension("spatial_gram: empty user list");
    array.validate();
    const auto k = static_cast<Eigen::Index>(users.size());
    CMatrix a(static_cast<Eigen::Index>(array.elements()), k);
    for (Eigen::Index i = 0; i < k; ++i)
        a.col(i) = users[static_cast<std::size_t>(i)].beta * array_response(users[static_cast<std::size_t>(i)], array);
    return {linalg::symmetrize(a.adjoint() * a), static_cast<double>(array.elements())};
}

/// Space-time Gram from user states. Because (b_j kron a_j)^H (b_k kron a_k)
/// = <b_j, b_k><a_j, a_k>, it is the Hadamard product of the temporal and
/// spatial Grams, which avoids the ML-row matrix entirely.
inline GramMatrix spacetime_gram(const std::vector<UserState> &users, const ArrayConfig &array, std::size_t l)
{
    if (l == 0)
        throw InvalidDimension("spacetime_gram: snapshot count must be positive");
    GramMatrix g = spatial_gram(users, array);
    const auto k = static_cast<Eigen::Index>(users.size());
    CMatrix b(static_cast<Eigen::Index>(l), k);
    for (Eigen::Index i = 0; i < k; ++i)
        b.col(i) = temporal_steering(users[static_cast<std::size_t>(i)].omega, l);
    const CMatrix bt = b.adjoint() * b;
    g.entries = linalg::symmetrize(bt.cwiseProduct(g.entries));
    g.normalization *= static_cast<double>(l);
    return g;
}

namespace detail
{
// Returns the min eigenvalue and whether the Gram passes the singularity floor.
inline bool nonsingular(const GramMatrix &g, double &min_eig)
{
    const Eigen::VectorXd ev = linalg::eigenvalues(g.entries);
    min_eig = ev(0);
    const double max_eig = ev(ev.size() - 1);
    return max_eig > 0.0 && min_eig >= kSingularityFloor * max_eig;
}
} // namespace detail

/// Common ZF SINR rho * m_eff / tr(G^{-1}); throws SingularGramError.
inline double zf_sinr(const GramMatrix &g, double rho, double m_eff)
{
    if (g.size() == 0)
        throw InvalidDimension("zf_sinr: empty Gram");
    double min_eig = 0.0;
    if (!detail::nonsingular(g, min_eig))
        throw SingularGramError(min_eig);
    double tr = 0.0;
    if (!linalg::trace_inverse(g.entries, tr))
        throw SingularGramError(min_eig);
    return rho * m_eff / tr;
}

/// Rate report for a Gram with given effective dimension and pre-log factor.
/// Singular Grams collapse to rate 0 and are flagged.
inline RateReport zf_rate_from_gram(const GramMatrix &g, double rho, double m_eff, double prelog)
{
    if (g.size() == 0)
        throw InvalidDimension("zf_rate_from_gram: empty Gram");
    RateReport r;
    r.prelog = prelog;
    r.users = g.size();
    double min_eig = 0.0;
    double tr = 0.0;
    const bool ok = detail::nonsingular(g, min_eig) && linalg::trace_inverse(g.entries, tr);
    r.min_eigenvalue = min_eig;
    if (!ok)
    {
        r.collapsed = true;
        r.per_user_rates.assign(r.users, 0.0);
        return r;
    }
    r.sinr = rho * m_eff / tr;
    r.per_user_rates.assign(r.users, prelog * std::log2(1.0 + r.sinr));
    r.sum_rate = prelog * static_cast<double>(r.users) * std::log2(1.0 + r.sinr);
    return r;
}

inline RateReport zf_sum_rate(const ChannelMatrix &h, double rho)
{
    return zf_rate_from_gram(gram(h), rho, static_cast<double>(h.entries.rows()), 1.0);
}

inline RateReport stab_sum_rate(const SpaceTimeChannel &h, double rho, std::size_t l)
{
    if (l == 0 || l != h.snapshots)
        throw InvalidDimension("stab_sum_rate: snapshot count does not match the channel");
    return zf_rate_from_gram(gram(h), rho, static_cast<double>(h.entries.rows()), 1.0 / static_cast<double>(l));
}

/// |g_x| |g_y| for two users, via the Dirichlet kernel sin(pi m d) / (m sin(pi d)).
inline double dirichlet_magnitude(double delta, std::size_t m)
{
    if (m == 0)
        throw InvalidDimension("dirichlet_magnitude: m must be positive");
    const double s = std::sin(kPi * delta);
    if (std::abs(delta - std::round(delta)) < 1e-12)
        return 1.0;
    return std::abs(std::sin(kPi * static_cast<double>(m) * delta) / (static_cast<double>(m) * s));
}

inline double two_user_correlation(double delta_ux, double delta_uy, std::size_t m_x, std::size_t m_y)
{
    return dirichlet_magnitude(delta_ux, m_x) * dirichlet_magnitude(delta_uy, m_y);
}

/// Closed-form two-user ZF sum rate 2 log2(1 + rho m (1 - |g|^2) / 2).
inline double two_user_rate(double g_mag, double rho, double m)
{
    if (!(g_mag >= 0.0 && g_mag <= 1.0))
        throw std::invalid_argument("two_user_rate: correlation magnitude must lie in [0, 1]");
    return 2.0 * std::log2(1.0 + 0.5 * rho * m * (1.0 - g_mag * g_mag));
}

/// Maximum ratio transmission, F = H / ||H||_F.
inline RateReport mrt_sum_rate(const ChannelMatrix &h, double rho)
{
    if (h.users() == 0)
        throw InvalidDimension("mrt_sum_rate: empty channel");
    const CMatrix w = h.entries.adjoint() * h.entries;
    const double total = w.trace().real();
    RateReport r;
    r.users = h.users();
    r.prelog = 1.0;
    r.per_user_rates.resize(r.users, 0.0);
    if (!(total > 0.0))
        return r;
    double sinr_sum = 0.0;
    for (Eigen::Index k = 0; k < w.rows(); ++k)
    {
        double interference = 0.0;
        for (Eigen::Index i = 0; i < w.cols(); ++i)
            if (i != k)
                interference += std::norm(w(k, i));
        const double signal = std::norm(w(k, k));
        const double sinr = rho * signal / (rho * interference + total);
        sinr_sum += sinr;
        r.per_user_rates[static_cast<std::size_t>(k)] = std::log2(1.0 + sinr);
        r.sum_rate += r.per_user_rates[static_cast<std::size_t>(k)];
    }
    r.sinr = sinr_sum / static_cast<double>(r.users);
    return r;
}

/// TDMA: each user alone at full power for a 1/K share of time.
inline RateReport tdma_sum_rate(const ChannelMatrix &h, double rho)
{
    if (h.users() == 0)
        throw InvalidDimension("tdma_sum_rate: empty channel");
    RateReport r;
    r.users = h.users();
    r.prelog = 1.0 / static_cast<double>(r.users);
    double sinr_sum = 0.0;
    for (Eigen::Index k = 0; k < h.entries.cols(); ++k)
    {
        const double sinr = rho * h.entries.col(k).squaredNorm();
        sinr_sum += sinr;
        r.per_user_rates.push_back(r.prelog * std::log2(1.0 + sinr));
        r.sum_rate += r.per_user_rates.back();
    }
    r.sinr = sinr_sum / static_cast<double>(r.users);
    return r;
}

} // namespace stabsim
