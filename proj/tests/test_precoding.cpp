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

#include "stabsim/precoding.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace stabsim;

namespace
{

std::vector<UserState> ula_users(std::initializer_list<double> us, double beta = 1.0)
{
    std::vector<UserState> out;
    for (double u : us)
    {
        UserState s;
        s.u_x = u;
        s.beta = beta;
        out.push_back(s);
    }
    return out;
}

// Explicit-inverse oracle for tr(G^{-1}) on small matrices.
double trace_inverse_oracle(const CMatrix &g) { return g.inverse().trace().real(); }

} // namespace

TEST(Gram, OrthogonalColumnsGiveIdentity)
{
    const std::size_t m = 32;
    const auto us = ula_users({0.0, 1.0 / 32, 2.0 / 32, 5.0 / 32});
    const GramMatrix g = gram(build_channel(us, ArrayConfig::ula(m)));
    EXPECT_NEAR((g.entries - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 0.0, 1e-12);
    EXPECT_DOUBLE_EQ(g.normalization, 32.0);
}

TEST(Gram, DuplicatedUserIsRankDeficient)
{
    const auto us = ula_users({0.013, 0.013, 0.2});
    const GramMatrix g = gram(build_channel(us, ArrayConfig::ula(16)));
    EXPECT_NEAR(linalg::eigenvalues(g.entries)(0), 0.0, 1e-10);
    const RateReport r = zf_sum_rate(build_channel(us, ArrayConfig::ula(16)), 1e3);
    EXPECT_TRUE(r.collapsed);
    EXPECT_EQ(r.sum_rate, 0.0);
}

TEST(Gram, TwoUserOffDiagonalIsDirichlet)
{
    Rng rng(21);
    for (int t = 0; t < 100; ++t)
    {
        const double du = rng.uniform(-0.2, 0.2);
        const auto us = ula_users({0.0, du});
        const GramMatrix g = gram(build_channel(us, ArrayConfig::ula(24)));
        EXPECT_NEAR(std::abs(g.entries(0, 1)), dirichlet_magnitude(du, 24), 1e-12);
    }
}

TEST(Gram, FastPathsMatchExplicitProducts)
{
    const auto us = draw_users(9, 60.0, 600.0, Placement::Square, std::uint64_t{12});
    const ArrayConfig arr = ArrayConfig::upa(8, 8);
    const GramMatrix a = gram(build_channel(us, arr));
    const GramMatrix b = spatial_gram(us, arr);
    const double scale = a.entries.cwiseAbs().maxCoeff();
    EXPECT_LT((a.entries - b.entries).cwiseAbs().maxCoeff(), 1e-12 * scale);
    const GramMatrix c = gram(build_spacetime_channel(us, arr, 4));
    const GramMatrix d = spacetime_gram(us, arr, 4);
    EXPECT_LT((c.entries - d.entries).cwiseAbs().maxCoeff(), 1e-12 * scale);
    EXPECT_DOUBLE_EQ(d.normalization, 256.0);
    EXPECT_LT(linalg::hermitian_defect(a.entries), 1e-15);
}

TEST(ZfSinr, IdentityAndSingleUser)
{
    const GramMatrix eye{CMatrix::Identity(5, 5), 1.0};
    EXPECT_NEAR(zf_sinr(eye, 10.0, 64.0), 10.0 * 64.0 / 5.0, 1e-12);
    const GramMatrix one{CMatrix::Identity(1, 1), 1.0};
    EXPECT_NEAR(zf_sinr(one, 3.0, 16.0), 48.0, 1e-12);
}

TEST(ZfSinr, TwoByTwoHandInverse)
{
    for (double g : {0.0, 0.3, 0.77, 0.999})
    {
        CMatrix m(2, 2);
        m << 1.0, cplx(0, g), cplx(0, -g), 1.0;
        const double rho = 7.0, meff = 32.0;
        EXPECT_NEAR(zf_sinr({m, 1.0}, rho, meff), rho * meff * (1 - g * g) / 2.0, 1e-9 * rho * meff);
    }
}

TEST(ZfSinr, SingularGramCarriesEigenvalue)
{
    CMatrix m = CMatrix::Ones(2, 2);
    try
    {
        zf_sinr({m, 1.0}, 1.0, 4.0);
        FAIL() << "expected SingularGramError";
    }
    catch (const SingularGramError &e)
    {
        EXPECT_NEAR(e.min_eigenvalue(), 0.0, 1e-12);
    }
}

TEST(ZfSumRate, OrthogonalUsers)
{
    const std::size_t m = 16;
    const auto us = ula_users({0.0, 2.0 / 16, 5.0 / 16});
    const double rho = 100.0;
    const RateReport r = zf_sum_rate(build_channel(us, ArrayConfig::ula(m)), rho);
    EXPECT_NEAR(r.sum_rate, 3.0 * std::log2(1.0 + rho * 16.0 / 3.0), 1e-10);
    EXPECT_NEAR(r.sum_rate, r.prelog * 3.0 * std::log2(1.0 + r.sinr), 1e-12);
    EXPECT_FALSE(r.collapsed);
}

TEST(ZfSumRate, StabWithOneSnapshotIsBitCompatible)
{
    const auto us = draw_users(8, 90.0, 600.0, Placement::Square, std::uint64_t{3});
    const ArrayConfig arr = ArrayConfig::upa(8, 8);
    const RateReport a = zf_sum_rate(build_channel(us, arr), 1e15);
    const RateReport b = stab_sum_rate(build_spacetime_channel(us, arr, 1), 1e15, 1);
    EXPECT_EQ(a.sum_rate, b.sum_rate);
    EXPECT_EQ(a.sinr, b.sinr);
    EXPECT_THROW(stab_sum_rate(build_spacetime_channel(us, arr, 2), 1e15, 3), std::invalid_argument);
}

TEST(ZfSumRate, StabPrelog)
{
    const auto us = draw_users(6, 90.0, 600.0, Placement::Square, std::uint64_t{8});
    const ArrayConfig arr = ArrayConfig::upa(8, 8);
    const RateReport r = stab_sum_rate(build_spacetime_channel(us, arr, 3), 1e16, 3);
    EXPECT_DOUBLE_EQ(r.prelog, 1.0 / 3.0);
    EXPECT_NEAR(r.sum_rate, 6.0 / 3.0 * std::log2(1.0 + r.sinr), 1e-12);
}

TEST(ZfSumRate, MonotoneInRho)
{
    const auto us = draw_users(10, 60.0, 600.0, Placement::Square, std::uint64_t{17});
    const ChannelMatrix h = build_channel(us, ArrayConfig::upa(16, 16));
    double prev = -1.0;
    for (double p = 10; p <= 70; p += 5)
    {
        const double r = zf_sum_rate(h, std::pow(10.0, (p + 107.0) / 10.0)).sum_rate;
        EXPECT_GE(r, prev);
        prev = r;
    }
}

TEST(ZfSumRate, DuplicateUserNeverHelps)
{
    Rng rng(5);
    for (int t = 0; t < 20; ++t)
    {
        auto us = draw_users(5, 120.0, 600.0, Placement::Square, rng);
        const ArrayConfig arr = ArrayConfig::upa(16, 16);
        const double base = zf_sum_rate(build_channel(us, arr), 1e15).sum_rate;
        us.push_back(us[static_cast<std::size_t>(t) % 5]);
        const RateReport dup = zf_sum_rate(build_channel(us, arr), 1e15);
        EXPECT_LE(dup.sum_rate, base);
        EXPECT_TRUE(dup.collapsed);
    }
}

TEST(ZfSumRate, CommonGainScalesSinrQuadratically)
{
    Rng rng(44);
    for (int t = 0; t < 20; ++t)
    {
        auto us = draw_users(4, 120.0, 600.0, Placement::Square, rng);
        const ArrayConfig arr = ArrayConfig::upa(8, 8);
        const double s1 = zf_sum_rate(build_channel(us, arr), 1e15).sinr;
        for (auto &u : us)
            u.beta *= 3.0;
        const double s2 = zf_sum_rate(build_channel(us, arr), 1e15).sinr;
        EXPECT_NEAR(s2 / s1, 9.0, 1e-9);
    }
}

TEST(ZfSumRate, TraceInverseMatchesExplicitInverse)
{
    Rng rng(9);
    for (int t = 0; t < 30; ++t)
    {
        const auto us = draw_users(6, 200.0, 600.0, Placement::Square, rng);
        GramMatrix g = spatial_gram(us, ArrayConfig::upa(8, 8));
        double tr = 0.0;
        ASSERT_TRUE(linalg::trace_inverse(g.entries, tr));
        EXPECT_NEAR(tr, trace_inverse_oracle(g.entries), 1e-8 * tr);
    }
}

TEST(TwoUser, CorrelationExamples)
{
    EXPECT_DOUBLE_EQ(two_user_correlation(0.0, 0.0, 16, 16), 1.0);
    EXPECT_NEAR(two_user_correlation(1.0 / 16, 0.0, 16, 16), 0.0, 1e-15);
    const double expect = 1.0 / (16.0 * std::sin(std::numbers::pi / 32.0));
    EXPECT_NEAR(two_user_correlation(1.0 / 32, 0.0, 16, 1), expect, 1e-12);
    EXPECT_DOUBLE_EQ(dirichlet_magnitude(2.0, 8), 1.0);
}

TEST(TwoUser, RateExamples)
{
    EXPECT_DOUBLE_EQ(two_user_rate(1.0, 1e3, 16), 0.0);
    EXPECT_NEAR(two_user_rate(0.0, 1e3, 16), 2.0 * std::log2(1.0 + 1e3 * 16 / 2.0), 1e-12);
    EXPECT_THROW(two_user_rate(1.5, 1.0, 16), std::invalid_argument);
}

TEST(TwoUser, MatchesPipeline)
{
    Rng rng(15);
    for (int t = 0; t < 100; ++t)
    {
        const double du = rng.uniform(-0.5, 0.5);
        const double rho = std::pow(10.0, rng.uniform(-1.0, 3.0));
        const auto us = ula_users({0.1, 0.1 + du});
        const RateReport r = zf_sum_rate(build_channel(us, ArrayConfig::ula(32)), rho);
        EXPECT_NEAR(r.sum_rate, two_user_rate(dirichlet_magnitude(du, 32), rho, 32), 1e-9);
    }
}

TEST(Baselines, SingleUserAgree)
{
    const auto us = ula_users({0.07}, 0.5);
    const ChannelMatrix h = build_channel(us, ArrayConfig::ula(16));
    const double rho = 20.0;
    const double hn2 = h.entries.col(0).squaredNorm();
    const double ref = std::log2(1.0 + rho * hn2);
    EXPECT_NEAR(zf_sum_rate(h, rho).sum_rate, ref, 1e-12);
    EXPECT_NEAR(mrt_sum_rate(h, rho).sum_rate, ref, 1e-12);
    EXPECT_NEAR(tdma_sum_rate(h, rho).sum_rate, ref, 1e-12);
}

TEST(Baselines, OrthogonalUsersMrtEqualsZf)
{
    const auto us = ula_users({0.0, 3.0 / 16, 8.0 / 16});
    const ChannelMatrix h = build_channel(us, ArrayConfig::ula(16));
    EXPECT_NEAR(mrt_sum_rate(h, 50.0).sum_rate, zf_sum_rate(h, 50.0).sum_rate, 1e-10);
}

TEST(Baselines, MrtMatchesDirectPrecoderSinr)
{
    // Direct evaluation: F = H / ||H||_F, SINR_k = rho |h_k^H f_k|^2 / (1 + rho sum_{i != k} |h_k^H f_i|^2).
    const auto us = draw_users(5, 60.0, 600.0, Placement::Square, std::uint64_t{31});
    ChannelMatrix h = build_channel(us, ArrayConfig::upa(4, 4));
    h.entries /= std::abs(us[0].beta);
    const double rho = 3.0;
    const CMatrix f = h.entries / h.entries.norm();
    double sum = 0.0;
    for (int k = 0; k < 5; ++k)
    {
        double interf = 0.0;
        for (int i = 0; i < 5; ++i)
            if (i != k)
                interf += std::norm(h.entries.col(k).dot(f.col(i)));
        sum += std::log2(1.0 + rho * std::norm(h.entries.col(k).dot(f.col(k))) / (1.0 + rho * interf));
    }
    EXPECT_NEAR(mrt_sum_rate(h, rho).sum_rate, sum, 1e-10);
}

TEST(Baselines, IdenticalUsersMrtSaturatesTdmaGrows)
{
    const auto us = ula_users({0.1, 0.1});
    const ChannelMatrix h = build_channel(us, ArrayConfig::ula(8));
    double last_mrt = 0.0;
    for (double rho : {1e2, 1e4, 1e6, 1e8})
    {
        const RateReport mrt = mrt_sum_rate(h, rho);
        for (double r : mrt.per_user_rates)
            EXPECT_LT(r, 1.0); // SINR < 1 per user
        last_mrt = mrt.sum_rate;
    }
    EXPECT_NEAR(last_mrt, 2.0 * std::log2(2.0), 1e-4);
    EXPECT_GT(tdma_sum_rate(h, 1e8).sum_rate, tdma_sum_rate(h, 1e4).sum_rate + 10.0);
}
