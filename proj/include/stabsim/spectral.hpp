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

#include "stabsim/crowding.hpp"
#include "stabsim/parallel.hpp"
#include "stabsim/precoding.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace stabsim
{

/// Smallest eigenvalue of a Gram matrix. Round-off negatives down to -1e-10
/// are clamped to 0.
inline double min_eigenvalue(const GramMatrix &g)
{
    if (g.size() == 0)
        throw InvalidDimension("min_eigenvalue: empty Gram");
    if (linalg::hermitian_defect(g.entries) > 1e-12)
        throw std::invalid_argument("min_eigenvalue: matrix is not Hermitian");
    const double lam = linalg::eigenvalues(g.entries)(0);
    if (lam < 0.0)
    {
        if (lam >= -1e-10)
            return 0.0;
        throw std::domain_error("min_eigenvalue: Gram matrix is not positive semidefinite");
    }
    return lam;
}

/// Exact integer k-th root of n, if there is one.
inline std::optional<std::size_t> exact_root(std::size_t n, unsigned k)
{
    auto s = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / k)));
    for (std::size_t c = (s > 0 ? s - 1 : 0); c <= s + 1; ++c)
    {
        std::size_t p = 1;
        for (unsigned i = 0; i < k; ++i)
            p *= c;
        if (p == n)
            return c;
    }
    return std::nullopt;
}

/// Equispaced single-cluster configuration. Resolution per axis is {M} for
/// dims 1, {M, L} for dims 2 (spatial x Doppler), {M_x, M_y, L} for dims 3.
struct ClusterSpec
{
    std::size_t n = 2;
    unsigned dims = 1;
    std::array<std::size_t, 3> resolution{256, 1, 1};
    std::array<double, 3> base_offset{0.0, 0.0, 0.0};

    /// Points per axis: n, sqrt(n) or cbrt(n).
    std::size_t side() const
    {
        if (dims < 1 || dims > 3)
            throw std::invalid_argument("ClusterSpec: dims must be 1, 2 or 3");
        if (n < 2)
            throw std::invalid_argument("ClusterSpec: need n >= 2");
        if (dims == 1)
            return n;
        const auto s = exact_root(n, dims);
        if (!s)
            throw std::invalid_argument(dims == 2 ? "ClusterSpec: n must be a perfect square"
                                                  : "ClusterSpec: n must be a perfect cube");
        if (*s < 2)
            throw std::invalid_argument("ClusterSpec: need at least two points per axis");
        return *s;
    }

    void validate() const
    {
        (void)side();
        for (unsigned d = 0; d < dims; ++d)
            if (resolution[d] == 0)
                throw InvalidDimension("ClusterSpec: resolution must be positive");
    }

    /// Grid spacing along axis d: 1 / (res_d (side - 1)).
    double spacing(unsigned d) const
    {
        return 1.0 / (static_cast<double>(resolution[d]) * static_cast<double>(side() - 1));
    }
};

/// Unit-gain users on the equispaced grid. Index order is Doppler-major,
/// then y, then x, which matches the column order of B kron A.
inline std::vector<UserState> cluster_users(const ClusterSpec &spec)
{
    spec.validate();
    const std::size_t s = spec.side();
    std::vector<UserState> users;
    users.reserve(spec.n);
    auto at = [&](unsigned d, std::size_t i) { return spec.base_offset[d] + static_cast<double>(i) * spec.spacing(d); };
    switch (spec.dims)
    {
    case 1:
        for (std::size_t i = 0; i < s; ++i)
            users.push_back(UserState{.u_x = at(0, i)});
        break;
    case 2:
        for (std::size_t j = 0; j < s; ++j)
            for (std::size_t i = 0; i < s; ++i)
                users.push_back(UserState{.omega = at(1, j), .u_x = at(0, i)});
        break;
    default:
        for (std::size_t l = 0; l < s; ++l)
            for (std::size_t y = 0; y < s; ++y)
                for (std::size_t x = 0; x < s; ++x)
                    users.push_back(UserState{.omega = at(2, l), .u_x = at(0, x), .u_y = at(1, y)});
        break;
    }
    return users;
}

/// Gram of the cluster: spatial ULA for dims 1, ULA x Doppler for dims 2,
/// UPA x Doppler for dims 3.
inline GramMatrix cluster_gram(const ClusterSpec &spec)
{
    const auto users = cluster_users(spec);
    switch (spec.dims)
    {
    case 1:
        return spatial_gram(users, ArrayConfig::ula(spec.resolution[0]));
    case 2:
        return spacetime_gram(users, ArrayConfig::ula(spec.resolution[0]), spec.resolution[1]);
    default:
        return spacetime_gram(users, ArrayConfig::upa(spec.resolution[0], spec.resolution[1]), spec.resolution[2]);
    }
}

inline double log_binomial(double n, double k) { return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1); }

/// log C(n) with C(n) = 1 / ((2n - 1) binom(2n - 2, n - 1)).
inline double log_cluster_constant(std::size_t n)
{
    const double nd = static_cast<double>(n);
    return -std::log(2.0 * nd - 1.0) - log_binomial(2.0 * nd - 2.0, nd - 1.0);
}

namespace detail
{
// log of C(s) (2 pi / (s - 1))^{2s - 2}, the 1D single-cluster bound.
inline double log_axis_bound(std::size_t s)
{
    const double sd = static_cast<double>(s);
    return log_cluster_constant(s) + (2.0 * sd - 2.0) * std::log(2.0 * kPi / (sd - 1.0));
}
} // namespace detail

/// Upper bound on lambda_1 for n users equispaced across one 1/M bin.
inline double lemma2_bound(std::size_t n)
{
    if (n < 2)
        throw std::invalid_argument("lemma2_bound: need n >= 2");
    return std::exp(detail::log_axis_bound(n));
}

/// Space-Doppler grid of n = s^2 users: C(s)^2 (2 pi / (s - 1))^{4s - 4}.
inline double lemma4_bound(std::size_t n)
{
    const auto s = exact_root(n, 2);
    if (!s || *s < 2)
        throw std::invalid_argument("lemma4_bound: n must be a perfect square >= 4");
    return std::exp(2.0 * detail::log_axis_bound(*s));
}

/// Three-axis grid of n = s^3 users: C(s)^3 (2 pi / (s - 1))^{6s - 6}.
inline double bound_3d(std::size_t n)
{
    const auto s = exact_root(n, 3);
    if (!s || *s < 2)
        throw std::invalid_argument("bound_3d: n must be a perfect cube >= 8");
    return std::exp(3.0 * detail::log_axis_bound(*s));
}

/// Matching lower bound C_n (1 / (n - 1))^{2(n - 1)} for the equispaced 1D
/// cluster, with
///   C_n = M/(M+1) ((n-1)!)^4 / (B_n^2 (n/pi)^{2n-2} (2n-2)!)
///   B_n = 20 sqrt(2)/19 (1 - pi^2/(3n^2))^{-(n-1)/2} (M/n)^{n-1} floor(M/n)^{-(n-1)}
/// evaluated in the log domain.
inline double lower_bound_li(std::size_t n, std::size_t m)
{
    if (n < 2)
        throw std::invalid_argument("lower_bound_li: need n >= 2");
    if (m < n)
        throw std::invalid_argument("lower_bound_li: need m >= n");
    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(m);
    const double e = nd - 1.0;
    const double log_b = std::log(20.0 * std::sqrt(2.0) / 19.0) - 0.5 * e * std::log(1.0 - kPi * kPi / (3.0 * nd * nd)) +
                         e * (std::log(md / nd) - std::log(std::floor(md / nd)));
    const double log_c = std::log(md / (md + 1.0)) + 4.0 * std::lgamma(nd) - 2.0 * log_b -
                         2.0 * e * std::log(nd / kPi) - std::lgamma(2.0 * nd - 1.0);
    return std::exp(log_c - 2.0 * e * std::log(e));
}

/// Alternating binomial test vector c_i = (-1)^i binom(n - 1, i), i = 0..n-1.
inline std::vector<std::int64_t> rayleigh_test_vector(std::size_t n)
{
    if (n < 2)
        throw std::invalid_argument("rayleigh_test_vector: need n >= 2");
    if (n > 63)
        throw std::invalid_argument("rayleigh_test_vector: coefficients overflow 64 bits beyond n = 63");
    std::vector<std::int64_t> c(n);
    std::int64_t b = 1;
    for (std::size_t i = 0; i < n; ++i)
    {
        c[i] = (i % 2 == 0) ? b : -b;
        // binom(n-1, i+1) = binom(n-1, i) (n-1-i) / (i+1), exact in 128 bits
        b = static_cast<std::int64_t>(static_cast<__int128>(b) * static_cast<__int128>(n - 1 - i) /
                                      static_cast<__int128>(i + 1));
    }
    return c;
}

/// Test vector for a cluster: Kronecker power of the 1D vector per axis.
inline Eigen::VectorXd cluster_test_vector(const ClusterSpec &spec)
{
    const std::size_t s = spec.side();
    const auto c1 = rayleigh_test_vector(s);
    Eigen::VectorXd axis(static_cast<Eigen::Index>(s));
    for (std::size_t i = 0; i < s; ++i)
        axis(static_cast<Eigen::Index>(i)) = static_cast<double>(c1[i]);
    Eigen::VectorXd c = axis;
    for (unsigned d = 1; d < spec.dims; ++d)
    {
        Eigen::VectorXd next(c.size() * axis.size());
        for (Eigen::Index j = 0; j < axis.size(); ++j)
            next.segment(j * c.size(), c.size()) = axis(j) * c;
        c = next;
    }
    return c;
}

inline double rayleigh_quotient(const GramMatrix &g, const Eigen::VectorXd &c)
{
    if (static_cast<std::size_t>(c.size()) != g.size())
        throw InvalidDimension("rayleigh_quotient: vector length does not match the Gram");
    const CVector cc = c.cast<cplx>();
    return (cc.adjoint() * g.entries * cc)(0).real() / c.squaredNorm();
}

/// Bound comparison for one cluster. Invariant when all fields are set:
/// lower_bound <= lambda_min_numeric <= rayleigh_value, lambda_min_numeric <= upper_bound.
struct BoundReport
{
    std::size_t n = 0;
    double lambda_min_numeric = 0.0;
    double upper_bound = 0.0;
    std::optional<double> lower_bound;
    std::optional<double> rayleigh_value;
};

inline BoundReport bound_report(const ClusterSpec &spec)
{
    const GramMatrix g = cluster_gram(spec);
    BoundReport r;
    r.n = spec.n;
    r.lambda_min_numeric = min_eigenvalue(g);
    r.rayleigh_value = rayleigh_quotient(g, cluster_test_vector(spec));
    switch (spec.dims)
    {
    case 1:
        r.upper_bound = lemma2_bound(spec.n);
        r.lower_bound = lower_bound_li(spec.n, spec.resolution[0]);
        break;
    case 2:
        r.upper_bound = lemma4_bound(spec.n);
        break;
    default:
        r.upper_bound = bound_3d(spec.n);
        break;
    }
    return r;
}

/// Conditioned Monte Carlo check of the ZF rate upper-bound chain.
struct BoundChainSpec
{
    std::size_t n = 2;     // required max load
    std::size_t m = 256;   // ULA elements
    std::size_t k = 16;    // users
    double rho = 1.0;      // effective linear SNR (unit-gain users)
    std::size_t trials = 500;
    std::uint64_t seed = 1;
    std::size_t bins = 16; // support spans bins / M in u
    std::size_t max_attempts = 1'000'000;
    std::size_t threads = 1;
};

struct BoundChainResult
{
    std::size_t n = 0;
    double empirical = 0.0;         // mean K log2(1 + rho M / tr(G^{-1}))
    double submatrix = 0.0;         // mean K log2(1 + rho M lambda_1(G_S)), crowded bin
    double equispaced = 0.0;        // K log2(1 + rho M lambda_1(G'_S)), equispaced surrogate
    double cluster_bound = 0.0;     // K log2(1 + rho M C(n) (2 pi/(n-1))^{2n-2})
    double closed_form = 0.0;       // K log2(1 + rho M ((n-1)/pi)^{-2(n-1)})
    double lambda_equispaced = 0.0; // lambda_1(G'_S)
    double lower_bound = 0.0;       // lower_bound_li(n, M)
    std::size_t collapsed = 0;      // trials whose full Gram was singular
    std::size_t attempts = 0;       // total rejection-sampling draws
    std::vector<double> trial_empirical;
    std::vector<double> trial_submatrix;
};

/// Draws K unit-gain users uniformly over \c bins resolution bins of width
/// 1/M, keeps a draw only if the max load is exactly n, and compares the
/// empirical ZF sum rate against the chain of upper bounds.
inline BoundChainResult verify_bound_chain(const BoundChainSpec &spec)
{
    if (spec.n < 2 || spec.n > spec.k)
        throw ConfigError("verify_bound_chain: need 2 <= n <= K");
    if (spec.k > spec.m)
        throw ConfigError("verify_bound_chain: need K <= M");
    if (spec.bins == 0 || spec.trials == 0)
        throw ConfigError("verify_bound_chain: bins and trials must be positive");
    if (spec.n * spec.bins < spec.k)
        throw ConfigError("verify_bound_chain: max load n is impossible with K users in the given bins (pigeonhole)");

    const double md = static_cast<double>(spec.m);
    const double kd = static_cast<double>(spec.k);
    const ArrayConfig array = ArrayConfig::ula(spec.m);
    const BinAxis axis{-0.5 * static_cast<double>(spec.bins) / md, 1.0 / md, spec.bins};
    const std::array<BinAxis, 1> axes{axis};
    const double hi = axis.lower + static_cast<double>(spec.bins) / md;

    BoundChainResult out;
    out.n = spec.n;
    out.trial_empirical.assign(spec.trials, 0.0);
    out.trial_submatrix.assign(spec.trials, 0.0);
    std::vector<std::size_t> attempts(spec.trials, 0);
    std::vector<char> collapsed(spec.trials, 0);

    parallel_for(spec.trials, spec.threads, [&](std::size_t t) {
        Rng rng(spec.seed, spec.n, t);
        std::vector<std::array<double, 1>> pts(spec.k);
        LoadSample load;
        std::size_t tries = 0;
        do
        {
            if (++tries > spec.max_attempts)
                throw ConfigError("verify_bound_chain: rejection sampling hit the attempt cap for n = " +
                                  std::to_string(spec.n) + "; choose a smaller n");
            for (auto &p : pts)
                p[0] = rng.uniform(axis.lower, hi);
            load = max_load<1>(pts, axes);
        } while (load.max_load != spec.n);
        attempts[t] = tries;

        std::vector<UserState> users(spec.k);
        for (std::size_t i = 0; i < spec.k; ++i)
            users[i].u_x = pts[i][0];
        const GramMatrix g = spatial_gram(users, array);
        const RateReport rate = zf_rate_from_gram(g, spec.rho, md, 1.0);
        out.trial_empirical[t] = rate.sum_rate;
        collapsed[t] = rate.collapsed ? 1 : 0;

        const auto idx = bin_indices<1>(pts, axes);
        std::vector<Eigen::Index> members;
        for (std::size_t i = 0; i < spec.k; ++i)
            if (idx[i] == load.crowded_bin)
                members.push_back(static_cast<Eigen::Index>(i));
        CMatrix sub(static_cast<Eigen::Index>(members.size()), static_cast<Eigen::Index>(members.size()));
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = 0; b < members.size(); ++b)
                sub(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = g.entries(members[a], members[b]);
        const double lam_s = min_eigenvalue(GramMatrix{sub, md});
        out.trial_submatrix[t] = kd * std::log2(1.0 + spec.rho * md * lam_s);
    });

    for (std::size_t t = 0; t < spec.trials; ++t)
    {
        out.empirical += out.trial_empirical[t];
        out.submatrix += out.trial_submatrix[t];
        out.attempts += attempts[t];
        out.collapsed += static_cast<std::size_t>(collapsed[t]);
    }
    out.empirical /= static_cast<double>(spec.trials);
    out.submatrix /= static_cast<double>(spec.trials);

    ClusterSpec cluster{spec.n, 1, {spec.m, 1, 1}, {0.0, 0.0, 0.0}};
    out.lambda_equispaced = min_eigenvalue(cluster_gram(cluster));
    out.lower_bound = lower_bound_li(spec.n, spec.m);
    const double nd = static_cast<double>(spec.n);
    out.equispaced = kd * std::log2(1.0 + spec.rho * md * out.lambda_equispaced);
    out.cluster_bound = kd * std::log2(1.0 + spec.rho * md * lemma2_bound(spec.n));
    out.closed_form = kd * std::log2(1.0 + spec.rho * md * std::pow((nd - 1.0) / kPi, -2.0 * (nd - 1.0)));
    return out;
}

} // namespace stabsim
