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

#include "stabsim/spectral.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace stabsim;

namespace
{

// Binomial coefficient by the multiplicative formula.
double binom(unsigned n, unsigned k)
{
    double r = 1.0;
    for (unsigned i = 1; i <= k; ++i)
        r = r * double(n - k + i) / double(i);
    return r;
}

double c_of(unsigned n) { return 1.0 / ((2.0 * n - 1.0) * binom(2 * n - 2, n - 1)); }

CMatrix principal(const CMatrix &g, const std::vector<int> &idx)
{
    CMatrix s(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b)
            s(a, b) = g(idx[a], idx[b]);
    return s;
}

} // namespace

TEST(MinEigenvalue, Examples)
{
    EXPECT_NEAR(min_eigenvalue({CMatrix::Identity(4, 4), 1.0}), 1.0, 1e-14);
    EXPECT_EQ(min_eigenvalue({CMatrix::Ones(2, 2), 1.0}), 0.0);
    for (double g : {0.1, 0.5, 0.93})
    {
        CMatrix m(2, 2);
        m << 1.0, std::polar(g, 0.7), std::polar(g, -0.7), 1.0;
        EXPECT_NEAR(min_eigenvalue({m, 1.0}), 1.0 - g, 1e-14);
    }
}

TEST(MinEigenvalue, RejectsNonHermitianAndIndefinite)
{
    CMatrix m(2, 2);
    m << 1.0, 0.5, 0.0, 1.0;
    EXPECT_THROW(min_eigenvalue({m, 1.0}), std::invalid_argument);
    CMatrix neg(2, 2);
    neg << 0.0, 1.0, 1.0, 0.0;
    EXPECT_THROW(min_eigenvalue({neg, 1.0}), std::domain_error);
}

TEST(Cluster, UserPlacement)
{
    const auto two = cluster_users({2, 1, {256, 1, 1}, {0.1, 0, 0}});
    ASSERT_EQ(two.size(), 2u);
    EXPECT_NEAR(two[1].u_x - two[0].u_x, 1.0 / 256, 1e-15);

    const auto grid = cluster_users({4, 2, {256, 4, 1}, {0, 0, 0}});
    ASSERT_EQ(grid.size(), 4u);
    EXPECT_NEAR(grid[1].u_x - grid[0].u_x, 1.0 / 256, 1e-15);
    EXPECT_NEAR(grid[2].omega - grid[0].omega, 1.0 / 4, 1e-15);

    const auto five = cluster_users({5, 1, {64, 1, 1}, {0, 0, 0}});
    EXPECT_NEAR(five[4].u_x - five[0].u_x, 1.0 / 64, 1e-15); // one resolution bin
}

TEST(Cluster, PerfectPowerRequired)
{
    EXPECT_THROW(cluster_users({5, 2, {64, 16, 1}, {0, 0, 0}}), std::invalid_argument);
    EXPECT_THROW(cluster_users({9, 3, {8, 8, 4}, {0, 0, 0}}), std::invalid_argument);
    EXPECT_THROW(lemma4_bound(8), std::invalid_argument);
    EXPECT_THROW(bound_3d(9), std::invalid_argument);
    EXPECT_NO_THROW(cluster_users({8, 3, {8, 8, 4}, {0, 0, 0}}));
}

TEST(Bounds, Lemma2HandValues)
{
    EXPECT_NEAR(lemma2_bound(2), 4.0 * std::numbers::pi * std::numbers::pi / 6.0, 1e-12);
    EXPECT_NEAR(lemma2_bound(2), 6.5797, 1e-4);
    EXPECT_NEAR(lemma2_bound(3), std::pow(std::numbers::pi, 4) / 30.0, 1e-12);
    EXPECT_NEAR(lemma2_bound(3), 3.2470, 1e-4);
    for (unsigned n = 2; n <= 12; ++n)
        EXPECT_NEAR(lemma2_bound(n), c_of(n) * std::pow(2.0 * std::numbers::pi / (n - 1.0), 2.0 * n - 2.0),
                    1e-12 * lemma2_bound(n));
    EXPECT_THROW(lemma2_bound(1), std::invalid_argument);
}

TEST(Bounds, Lemma2SuperExponentialDecay)
{
    double prev_ratio = 1.0;
    for (unsigned n = 4; n <= 20; ++n)
    {
        const double ratio = lemma2_bound(n + 1) / lemma2_bound(n);
        EXPECT_LT(ratio, 1.0);
        EXPECT_LT(ratio, prev_ratio);
        prev_ratio = ratio;
    }
    EXPECT_TRUE(std::isfinite(std::log(lemma2_bound(50))));
}

TEST(Bounds, Lemma4And3d)
{
    const double pi = std::numbers::pi;
    EXPECT_NEAR(lemma4_bound(4), 16.0 * std::pow(pi, 4) / 36.0, 1e-10);
    EXPECT_NEAR(lemma4_bound(4), 43.29, 1e-2);
    EXPECT_NEAR(lemma4_bound(9), std::pow(pi, 8) / 900.0, 1e-10);
    EXPECT_NEAR(lemma4_bound(9), 10.54, 1e-2);
    EXPECT_NEAR(bound_3d(8), std::pow(4.0 * pi * pi / 6.0, 3), 1e-9);
    EXPECT_NEAR(bound_3d(27), std::pow(std::pow(pi, 4) / 30.0, 3), 1e-9);
}

TEST(Bounds, Lemma4DominatesGridClusters)
{
    for (std::size_t n : {4u, 9u, 16u})
    {
        const ClusterSpec spec{n, 2, {64, 16, 1}, {0.01, -0.2, 0}};
        EXPECT_LE(min_eigenvalue(cluster_gram(spec)), lemma4_bound(n));
    }
    for (std::size_t n : {8u, 27u})
    {
        const ClusterSpec spec{n, 3, {8, 8, 8}, {0, 0, 0}};
        EXPECT_LE(min_eigenvalue(cluster_gram(spec)), bound_3d(n));
    }
}

TEST(Bounds, LowerBoundProperties)
{
    for (std::size_t n = 2; n <= 8; ++n)
        EXPECT_LE(lower_bound_li(n, 256), lemma2_bound(n));
    EXPECT_THROW(lower_bound_li(5, 4), std::invalid_argument);
    EXPECT_THROW(lower_bound_li(1, 4), std::invalid_argument);
    // floor factor equals one when n divides M: only M/(M+1) changes between these two
    EXPECT_NEAR(lower_bound_li(4, 256) / lower_bound_li(4, 512), (256.0 / 257.0) / (512.0 / 513.0), 1e-12);
}

TEST(RayleighVector, Examples)
{
    EXPECT_EQ(rayleigh_test_vector(2), (std::vector<std::int64_t>{1, -1}));
    EXPECT_EQ(rayleigh_test_vector(4), (std::vector<std::int64_t>{1, -3, 3, -1}));
    for (unsigned n = 2; n <= 30; ++n)
    {
        const auto c = rayleigh_test_vector(n);
        long double s = 0;
        for (auto v : c)
            s += static_cast<long double>(v) * static_cast<long double>(v);
        EXPECT_NEAR(double(s), binom(2 * n - 2, n - 1), 1e-6 * double(s));
    }
}

TEST(RayleighVector, AppendixIdentity)
{
    // |(H c)_k| = |beta| |1 - e^{j 2 pi k Delta}|^{n-1} with H = sqrt(M) beta A
    for (std::size_t n : {2u, 3u, 5u, 7u})
    {
        const std::size_t m = 64;
        const ClusterSpec spec{n, 1, {m, 1, 1}, {0.0, 0, 0}};
        auto users = cluster_users(spec);
        const double beta = 0.25;
        for (auto &u : users)
            u.beta = beta;
        const ChannelMatrix h = build_channel(users, ArrayConfig::ula(m));
        const auto c = rayleigh_test_vector(n);
        CVector cv(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i)
            cv(static_cast<Eigen::Index>(i)) = double(c[i]);
        const CVector hc = h.entries * cv;
        const double delta = spec.spacing(0);
        for (std::size_t k = 0; k < m; ++k)
        {
            const double ref =
                beta * std::pow(std::abs(1.0 - std::polar(1.0, 2.0 * std::numbers::pi * double(k) * delta)), n - 1.0);
            EXPECT_NEAR(std::abs(hc(static_cast<Eigen::Index>(k))), ref, 1e-9);
        }
    }
}

TEST(Sandwich, EquispacedOneDimensional)
{
    for (std::size_t m : {16u, 64u, 256u})
        for (std::size_t n = 2; n <= 8; ++n)
        {
            const BoundReport r = bound_report({n, 1, {m, 1, 1}, {0.0, 0, 0}});
            ASSERT_TRUE(r.lower_bound && r.rayleigh_value);
            const double tol = 1e-12 * r.upper_bound;
            EXPECT_LE(*r.lower_bound, r.lambda_min_numeric + tol) << "n=" << n << " M=" << m;
            EXPECT_LE(r.lambda_min_numeric, *r.rayleigh_value + tol) << "n=" << n << " M=" << m;
            EXPECT_LE(*r.rayleigh_value, r.upper_bound + tol) << "n=" << n << " M=" << m;
        }
}

TEST(Sandwich, RayleighQuotientUnderLemma2)
{
    for (std::size_t n = 2; n <= 8; ++n)
    {
        const ClusterSpec spec{n, 1, {256, 1, 1}, {0.0, 0, 0}};
        EXPECT_LE(rayleigh_quotient(cluster_gram(spec), cluster_test_vector(spec)), lemma2_bound(n));
    }
}

TEST(Kronecker, GridSpectrumFactorizes)
{
    for (std::size_t n : {4u, 9u, 16u})
    {
        const ClusterSpec st{n, 2, {64, 16, 1}, {0.02, -0.1, 0}};
        const std::size_t s = st.side();
        const ClusterSpec sx{s, 1, {64, 1, 1}, {0.02, 0, 0}};
        // temporal Gram: same 1D construction with L as the resolution
        const ClusterSpec sw{s, 1, {16, 1, 1}, {-0.1, 0, 0}};
        const double full = min_eigenvalue(cluster_gram(st));
        const double prod = min_eigenvalue(cluster_gram(sx)) * min_eigenvalue(cluster_gram(sw));
        EXPECT_NEAR(full, prod, 1e-10 * std::max(full, 1e-300)) << "n=" << n;
    }
}

TEST(Interlacing, PrincipalSubmatrices)
{
    Rng rng(77);
    for (int t = 0; t < 50; ++t)
    {
        const auto us = draw_users(8, 40.0, 600.0, Placement::Line, rng);
        const GramMatrix g = spatial_gram(us, ArrayConfig::ula(64));
        const double full = min_eigenvalue(g);
        std::vector<int> idx;
        for (int i = 0; i < 8; ++i)
            if (rng.uniform() < 0.5)
                idx.push_back(i);
        if (idx.empty())
            continue;
        EXPECT_LE(full, min_eigenvalue({principal(g.entries, idx), g.normalization}) * (1 + 1e-9) + 1e-30);
    }
}

TEST(BoundChain, OrderingAndFullBinCase)
{
    BoundChainSpec spec;
    spec.n = 3;
    spec.trials = 60;
    spec.rho = 1e6;
    const BoundChainResult r = verify_bound_chain(spec);
    EXPECT_LE(r.empirical, r.submatrix);
    EXPECT_LE(r.submatrix, r.equispaced);
    EXPECT_LE(r.equispaced, r.cluster_bound);
    EXPECT_LE(r.cluster_bound, r.closed_form);
    for (std::size_t t = 0; t < spec.trials; ++t)
        EXPECT_LE(r.trial_empirical[t], r.trial_submatrix[t] + 1e-9);

    // n = K: all users share one bin, the submatrix is the whole Gram
    BoundChainSpec all;
    all.n = 4;
    all.k = 4;
    all.m = 64;
    all.bins = 1;
    all.trials = 10;
    all.rho = 1e6;
    const BoundChainResult a = verify_bound_chain(all);
    EXPECT_LE(a.empirical, a.submatrix);

    BoundChainSpec bad = spec;
    bad.n = 17;
    EXPECT_THROW(verify_bound_chain(bad), ConfigError);
    BoundChainSpec capped = spec;
    capped.n = 14;
    capped.trials = 1;
    capped.max_attempts = 50;
    EXPECT_THROW(verify_bound_chain(capped), ConfigError);
}

TEST(BoundChain, RatesFallSteeplyWithLoad)
{
    double prev = 1e300;
    for (std::size_t n = 2; n <= 5; ++n)
    {
        BoundChainSpec spec;
        spec.n = n;
        spec.trials = 30;
        spec.rho = 1e6;
        const double e = verify_bound_chain(spec).empirical;
        EXPECT_LT(e, prev);
        prev = e;
    }
}

TEST(BoundChain, ReproducibleUnderSeed)
{
    BoundChainSpec spec;
    spec.n = 2;
    spec.trials = 20;
    spec.seed = 5;
    const auto a = verify_bound_chain(spec);
    spec.threads = 3;
    const auto b = verify_bound_chain(spec);
    EXPECT_EQ(a.empirical, b.empirical);
    EXPECT_EQ(a.trial_submatrix, b.trial_submatrix);
}
