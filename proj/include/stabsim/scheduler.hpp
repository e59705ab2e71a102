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

#include "stabsim/parallel.hpp"
#include "stabsim/precoding.hpp"
#include "stabsim/random.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

namespace stabsim
{

struct SelectionResult
{
    std::vector<std::size_t> selected; // pi(1), pi(2), ... in selection order
    CMatrix basis;                     // orthonormal columns Q
    double threshold = 1.0;
};

/// Greedy semi-orthogonal selection over candidate columns.
///
/// Each round projects the surviving candidates onto the orthogonal
/// complement of Q, picks the largest residual energy (ties go to the lowest
/// index), appends the normalized residual to Q and, while more users are
/// wanted, keeps only candidates whose normalized correlation with the user
/// just picked is below \p alpha. Zero-norm candidates never enter.
inline SelectionResult select_semi_orthogonal(const CMatrix &candidates, std::size_t k_target, double alpha)
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("selection threshold must lie in (0, 1]");
    SelectionResult res;
    res.threshold = alpha;
    const auto rows = candidates.rows();
    res.basis.resize(rows, 0);
    if (candidates.cols() == 0 || k_target == 0)
        return res;

    const Eigen::VectorXd norms = candidates.colwise().norm().transpose();
    std::vector<Eigen::Index> pool;
    for (Eigen::Index k = 0; k < candidates.cols(); ++k)
        if (norms(k) > 0.0)
            pool.push_back(k);

    CMatrix residual = candidates; // g_k, updated one basis vector at a time
    std::vector<CVector> basis;
    while (res.selected.size() < k_target && !pool.empty())
    {
        Eigen::Index best = -1;
        double best_energy = -1.0;
        for (Eigen::Index k : pool)
        {
            const double e = residual.col(k).squaredNorm();
            if (e > best_energy)
            {
                best_energy = e;
                best = k;
            }
        }
        // The residual of a candidate inside span(Q) is round-off only.
        if (best_energy <= 1e-24 * norms(best) * norms(best))
            break;

        CVector q = residual.col(best);
        for (const auto &prev : basis) // second Gram-Schmidt pass
            q -= prev * prev.dot(q);
        q.normalize();
        basis.push_back(q);
        res.selected.push_back(static_cast<std::size_t>(best));

        std::vector<Eigen::Index> next;
        const bool filter = res.selected.size() < k_target;
        const CVector h_pick = candidates.col(best);
        for (Eigen::Index k : pool)
        {
            if (k == best)
                continue;
            if (filter)
            {
                const double corr = std::abs(candidates.col(k).dot(h_pick)) / (norms(k) * norms(best));
                if (!(corr < alpha))
                    continue;
            }
            next.push_back(k);
        }
        pool.swap(next);
        for (Eigen::Index k : pool)
            residual.col(k) -= q * q.dot(residual.col(k));
    }
    res.basis.resize(rows, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
        res.basis.col(static_cast<Eigen::Index>(i)) = basis[i];
    return res;
}

/// Space-Doppler user selection on the stacked space-time channels.
inline SelectionResult sds_select(const SpaceTimeChannel &channels, std::size_t k_target, double alpha_st)
{
    return select_semi_orthogonal(channels.entries, k_target, alpha_st);
}

/// Spatial-only semi-orthogonal user selection.
inline SelectionResult sus_select(const ChannelMatrix &channels, std::size_t k_target, double alpha)
{
    return select_semi_orthogonal(channels.entries, k_target, alpha);
}

/// k distinct indices drawn uniformly from [0, u), in draw order.
inline std::vector<std::size_t> random_select(std::size_t u, std::size_t k_target, Rng &rng)
{
    std::vector<std::size_t> idx(u);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const std::size_t k = std::min(k_target, u);
    for (std::size_t i = 0; i < k; ++i)
        std::swap(idx[i], idx[i + static_cast<std::size_t>(rng.index(u - i))]);
    idx.resize(k);
    return idx;
}

/// The k strongest channels, ties to the lowest index.
inline std::vector<std::size_t> best_norm_select(const CMatrix &candidates, std::size_t k_target)
{
    std::vector<std::size_t> idx(static_cast<std::size_t>(candidates.cols()));
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const Eigen::VectorXd n = candidates.colwise().squaredNorm().transpose();
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return n(static_cast<Eigen::Index>(a)) > n(static_cast<Eigen::Index>(b));
    });
    idx.resize(std::min(k_target, idx.size()));
    return idx;
}

template <class T> std::vector<T> pick(const std::vector<T> &items, const std::vector<std::size_t> &idx)
{
    std::vector<T> out;
    out.reserve(idx.size());
    for (auto i : idx)
        out.push_back(items.at(i));
    return out;
}

/// A scheduling candidate pool: user states plus the geometry that turns
/// them into channels.
struct CandidatePool
{
    std::vector<UserState> users;
    ArrayConfig array;
    std::size_t snapshots = 1;
};

enum class Scheme
{
    StabSds, // space-time channels, SDS selection, STAB ZF rate
    ZfSus    // spatial channels, SUS selection, spatial ZF rate
};

/// Runs the scheme's selection on a pool.
inline std::vector<std::size_t> schedule(const CandidatePool &pool, Scheme scheme, std::size_t k_target, double alpha)
{
    if (scheme == Scheme::StabSds)
        return sds_select(build_spacetime_channel(pool.users, pool.array, pool.snapshots), k_target, alpha).selected;
    return sus_select(build_channel(pool.users, pool.array), k_target, alpha).selected;
}

/// Sum rate of a scheduled subset under the scheme's precoder.
inline RateReport scheduled_rate(const CandidatePool &pool, Scheme scheme, const std::vector<std::size_t> &selected,
                                 double rho)
{
    if (selected.empty())
        return RateReport{};
    const auto users = pick(pool.users, selected);
    const double m = static_cast<double>(pool.array.elements());
    if (scheme == Scheme::StabSds)
    {
        const double l = static_cast<double>(pool.snapshots);
        return zf_rate_from_gram(spacetime_gram(users, pool.array, pool.snapshots), rho, m * l, 1.0 / l);
    }
    return zf_rate_from_gram(spatial_gram(users, pool.array), rho, m, 1.0);
}

using PoolSampler = std::function<CandidatePool(Rng &)>;

/// Mean downstream sum rate for every (alpha, rho) pair. Selection does not
/// depend on rho, so each pool is scheduled once per alpha.
/// Trial t draws its pool from Rng(seed, 0, t).
inline std::vector<std::vector<double>> threshold_objective(const PoolSampler &sampler, Scheme scheme,
                                                            std::size_t k_target, const std::vector<double> &rhos,
                                                            const std::vector<double> &alpha_grid,
                                                            std::size_t trials, std::uint64_t seed,
                                                            std::size_t threads = 1)
{
    if (alpha_grid.empty())
        throw std::invalid_argument("threshold_objective: empty alpha grid");
    for (double a : alpha_grid)
        if (!(a > 0.0 && a <= 1.0))
            throw std::invalid_argument("threshold_objective: alpha values must lie in (0, 1]");
    if (trials == 0)
        throw std::invalid_argument("threshold_objective: need at least one trial");
    const std::size_t na = alpha_grid.size();
    const std::size_t nr = rhos.size();
    // per trial: [alpha][rho]
    std::vector<std::vector<double>> per_trial(trials, std::vector<double>(na * nr, 0.0));
    parallel_for(trials, threads, [&](std::size_t t) {
        Rng rng(seed, 0, t);
        const CandidatePool pool = sampler(rng);
        for (std::size_t a = 0; a < na; ++a)
        {
            const auto sel = schedule(pool, scheme, k_target, alpha_grid[a]);
            for (std::size_t r = 0; r < nr; ++r)
                per_trial[t][a * nr + r] = scheduled_rate(pool, scheme, sel, rhos[r]).sum_rate;
        }
    });
    std::vector<std::vector<double>> mean(na, std::vector<double>(nr, 0.0));
    for (std::size_t t = 0; t < trials; ++t)
        for (std::size_t a = 0; a < na; ++a)
            for (std::size_t r = 0; r < nr; ++r)
                mean[a][r] += per_trial[t][a * nr + r];
    for (auto &row : mean)
        for (auto &v : row)
            v /= static_cast<double>(trials);
    return mean;
}

struct TuningResult
{
    double best_alpha = 1.0;
    std::vector<double> alphas;
    std::vector<double> mean_rates;
};

/// Grid search for the selection threshold maximizing the mean sum rate.
/// Ties go to the smaller alpha.
inline TuningResult tune_threshold(const PoolSampler &sampler, Scheme scheme, std::size_t k_target, double rho,
                                   const std::vector<double> &alpha_grid, std::size_t trials, std::uint64_t seed,
                                   std::size_t threads = 1)
{
    if (alpha_grid.empty())
        throw std::invalid_argument("tune_threshold: empty alpha grid");
    TuningResult out;
    out.alphas = alpha_grid;
    std::sort(out.alphas.begin(), out.alphas.end());
    const auto table = threshold_objective(sampler, scheme, k_target, {rho}, out.alphas, trials, seed, threads);
    double best = -1.0;
    for (std::size_t a = 0; a < out.alphas.size(); ++a)
    {
        out.mean_rates.push_back(table[a][0]);
        if (table[a][0] > best)
        {
            best = table[a][0];
            out.best_alpha = out.alphas[a];
        }
    }
    return out;
}

} // namespace stabsim
