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
#include "stabsim/experiments/config.hpp"
#include "stabsim/experiments/stats.hpp"
#include "stabsim/experiments/table.hpp"
#include "stabsim/parallel.hpp"
#include "stabsim/precoding.hpp"
#include "stabsim/scheduler.hpp"
#include "stabsim/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace stabsim::experiments
{

namespace detail
{

inline long long ll(std::size_t v) { return static_cast<long long>(v); }

inline void require_array(const ExperimentConfig &c, ArrayKind kind, const char *driver)
{
    if (c.array.kind != kind)
        throw ConfigError(std::string(driver) + " requires a " + (kind == ArrayKind::ULA ? "ULA" : "UPA") +
                          " configuration");
}

inline void require_nonempty(const std::vector<double> &v, const char *what)
{
    if (v.empty())
        throw ConfigError(std::string(what) + " must not be empty");
}

inline Placement placement_for(const ArrayConfig &a)
{
    return a.kind == ArrayKind::ULA ? Placement::Line : Placement::Square;
}

/// Friis amplitude at the sub-satellite point.
inline double nadir_gain(const ExperimentConfig &c)
{
    return friis_gain(c.altitude_km, c.carrier_hz, c.path_loss_exponent);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Sum-rate CDFs of spatial ZF and STAB over cell sizes.
// Trial t at cell index i draws K users from Rng(seed, i, t).

inline Report run_cdf(ExperimentConfig cfg)
{
    cfg.validate();
    detail::require_array(cfg, ArrayKind::UPA, "cdf");
    detail::require_nonempty(cfg.r_cell_km, "r_cell_km");
    detail::require_nonempty(cfg.tx_power_dbm, "tx_power_dbm");

    Report rep{Driver::Cdf, cfg, {}};
    ResultTable trials("cdf_trials", {"r_cell_km", "tx_power_dbm", "trial", "zf_rate", "stab_rate", "zf_collapsed",
                                      "stab_collapsed"});
    ResultTable summary("cdf_summary", {"r_cell_km", "tx_power_dbm", "scheme", "mean_rate", "ci95", "median_rate",
                                        "collapse_fraction"});
    ResultTable grid("cdf_grid", {"r_cell_km", "tx_power_dbm", "scheme", "rate", "cdf"});

    const std::size_t np = cfg.tx_power_dbm.size();
    const double m = static_cast<double>(cfg.array.elements());
    const double l = static_cast<double>(cfg.l_snapshots);
    constexpr std::size_t kGridPoints = 201;

    for (std::size_t ri = 0; ri < cfg.r_cell_km.size(); ++ri)
    {
        const double r_km = cfg.r_cell_km[ri];
        // [trial][power][zf, stab, zf_collapsed, stab_collapsed]
        std::vector<std::vector<std::array<double, 4>>> out(cfg.trials, std::vector<std::array<double, 4>>(np));
        parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
            Rng rng(cfg.seed, ri, t);
            const auto users =
                draw_users(cfg.k_users, r_km, cfg.altitude_km, detail::placement_for(cfg.array), rng, cfg.link());
            const GramMatrix gs = spatial_gram(users, cfg.array);
            const GramMatrix gst = spacetime_gram(users, cfg.array, cfg.l_snapshots);
            for (std::size_t pi = 0; pi < np; ++pi)
            {
                const double rho = cfg.rho(cfg.tx_power_dbm[pi]);
                const RateReport zf = zf_rate_from_gram(gs, rho, m, 1.0);
                const RateReport st = zf_rate_from_gram(gst, rho, m * l, 1.0 / l);
                out[t][pi] = {zf.sum_rate, st.sum_rate, zf.collapsed ? 1.0 : 0.0, st.collapsed ? 1.0 : 0.0};
            }
        });

        for (std::size_t pi = 0; pi < np; ++pi)
        {
            const double p_dbm = cfg.tx_power_dbm[pi];
            std::array<std::vector<double>, 2> rates;
            std::array<double, 2> collapses{0.0, 0.0};
            for (std::size_t t = 0; t < cfg.trials; ++t)
            {
                const auto &o = out[t][pi];
                trials.add_row({r_km, p_dbm, detail::ll(t), o[0], o[1], static_cast<long long>(o[2]),
                                static_cast<long long>(o[3])});
                rates[0].push_back(o[0]);
                rates[1].push_back(o[1]);
                collapses[0] += o[2];
                collapses[1] += o[3];
            }
            const char *names[2] = {"ZF", "STAB"};
            double hi = 0.0;
            for (const auto &r : rates)
                hi = std::max(hi, *std::max_element(r.begin(), r.end()));
            for (int s = 0; s < 2; ++s)
            {
                const Summary sm = summarize(rates[s]);
                summary.add_row({r_km, p_dbm, std::string(names[s]), sm.mean, sm.ci95, quantile(rates[s], 0.5),
                                 collapses[s] / static_cast<double>(cfg.trials)});
                std::vector<double> sorted = rates[s];
                std::sort(sorted.begin(), sorted.end());
                for (std::size_t g = 0; g < kGridPoints; ++g)
                {
                    const double x = hi * static_cast<double>(g) / static_cast<double>(kGridPoints - 1);
                    grid.add_row({r_km, p_dbm, std::string(names[s]), x, empirical_cdf(sorted, x)});
                }
            }
        }
    }
    rep.tables = {std::move(trials), std::move(summary), std::move(grid)};
    return rep;
}

// ---------------------------------------------------------------------------
// Upper-bound chain against the crowding level n.
// Users have unit gain; the nadir Friis gain is folded into rho.

inline Report run_bound_chain(ExperimentConfig cfg)
{
    cfg.validate();
    detail::require_array(cfg, ArrayKind::ULA, "bound-chain");
    detail::require_nonempty(cfg.tx_power_dbm, "tx_power_dbm");
    if (cfg.n_values.empty())
        throw ConfigError("n_values must not be empty");
    for (std::size_t n : cfg.n_values)
        if (n < 2 || n > cfg.k_users)
            throw ConfigError("n_values entries must lie in [2, k_users]");

    Report rep{Driver::BoundChain, cfg, {}};
    ResultTable chain("bound_chain",
                      {"tx_power_dbm", "n", "trials", "empirical", "submatrix", "equispaced", "cluster_bound",
                       "closed_form", "lambda_equispaced", "lower_bound_li", "chain_holds", "collapsed", "attempts"});
    ResultTable per_trial("bound_chain_trials", {"tx_power_dbm", "n", "trial", "empirical", "submatrix"});

    const double beta = detail::nadir_gain(cfg);
    for (double p_dbm : cfg.tx_power_dbm)
    {
        for (std::size_t n : cfg.n_values)
        {
            BoundChainSpec spec;
            spec.n = n;
            spec.m = cfg.array.elements();
            spec.k = cfg.k_users;
            spec.rho = cfg.rho(p_dbm) * beta * beta;
            spec.trials = cfg.trials;
            spec.seed = cfg.seed;
            spec.bins = cfg.bins;
            spec.threads = cfg.threads;
            const BoundChainResult r = verify_bound_chain(spec);
            const bool holds = r.empirical <= r.submatrix && r.submatrix <= r.equispaced &&
                               r.equispaced <= r.cluster_bound && r.cluster_bound <= r.closed_form;
            chain.add_row({p_dbm, detail::ll(n), detail::ll(cfg.trials), r.empirical, r.submatrix, r.equispaced,
                           r.cluster_bound, r.closed_form, r.lambda_equispaced, r.lower_bound,
                           static_cast<long long>(holds), detail::ll(r.collapsed), detail::ll(r.attempts)});
            for (std::size_t t = 0; t < r.trial_empirical.size(); ++t)
                per_trial.add_row({p_dbm, detail::ll(n), detail::ll(t), r.trial_empirical[t], r.trial_submatrix[t]});
        }
    }
    chain.metadata["rho_includes_nadir_gain"] = beta * beta;
    rep.tables = {std::move(chain), std::move(per_trial)};
    return rep;
}

// ---------------------------------------------------------------------------
// Mean STAB-minus-ZF gain over the (p, q) exponent grid.
// Users for p index i, trial t come from Rng(seed, i, t) and are shared by
// every q in that row.

inline Report run_gain_map(ExperimentConfig cfg)
{
    cfg.validate();
    detail::require_array(cfg, ArrayKind::ULA, "gain-map");
    detail::require_nonempty(cfg.p_grid, "p_grid");
    detail::require_nonempty(cfg.q_grid, "q_grid");
    detail::require_nonempty(cfg.tx_power_dbm, "tx_power_dbm");
    const std::size_t mm = cfg.array.elements();
    for (double p : cfg.p_grid)
        for (double q : cfg.q_grid)
        {
            try
            {
                ScalingPoint{p, q, cfg.r_exponent, ArrayKind::ULA}.validate();
            }
            catch (const std::exception &e)
            {
                throw ConfigError(e.what());
            }
        }

    Report rep{Driver::GainMap, cfg, {}};
    ResultTable map("gain_map", {"tx_power_dbm", "p", "q", "k_users", "l_snapshots", "mean_gain", "ci95",
                                 "mean_zf", "mean_stab", "zf_collapse_fraction", "stab_collapse_fraction",
                                 "zf_regime", "stab_regime"});

    const double md = static_cast<double>(mm);
    const double r_km = cfg.altitude_km * std::pow(md, -cfg.r_exponent);
    const std::size_t nq = cfg.q_grid.size();
    const std::size_t np = cfg.tx_power_dbm.size();
    for (std::size_t pi = 0; pi < cfg.p_grid.size(); ++pi)
    {
        const double p = cfg.p_grid[pi];
        const std::size_t k = user_count(p, mm);
        // [trial][power][1 + q]: index 0 is ZF, the rest STAB per q; collapse flags alongside
        std::vector<std::vector<std::vector<double>>> rate(
            cfg.trials, std::vector<std::vector<double>>(np, std::vector<double>(nq + 1)));
        std::vector<std::vector<std::vector<char>>> coll(
            cfg.trials, std::vector<std::vector<char>>(np, std::vector<char>(nq + 1)));
        parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
            Rng rng(cfg.seed, pi, t);
            const auto users = draw_users(k, r_km, cfg.altitude_km, Placement::Line, rng, cfg.link());
            const GramMatrix gs = spatial_gram(users, cfg.array);
            for (std::size_t w = 0; w < np; ++w)
            {
                const double rho = cfg.rho(cfg.tx_power_dbm[w]);
                const RateReport zf = zf_rate_from_gram(gs, rho, md, 1.0);
                rate[t][w][0] = zf.sum_rate;
                coll[t][w][0] = zf.collapsed;
            }
            for (std::size_t qi = 0; qi < nq; ++qi)
            {
                const std::size_t l = snapshot_count(cfg.q_grid[qi], mm);
                const GramMatrix gst = spacetime_gram(users, cfg.array, l);
                const double ld = static_cast<double>(l);
                for (std::size_t w = 0; w < np; ++w)
                {
                    const RateReport st = zf_rate_from_gram(gst, cfg.rho(cfg.tx_power_dbm[w]), md * ld, 1.0 / ld);
                    rate[t][w][qi + 1] = st.sum_rate;
                    coll[t][w][qi + 1] = st.collapsed;
                }
            }
        });
        for (std::size_t w = 0; w < np; ++w)
            for (std::size_t qi = 0; qi < nq; ++qi)
            {
                const double q = cfg.q_grid[qi];
                std::vector<double> gain, zf, st;
                double zf_c = 0.0, st_c = 0.0;
                for (std::size_t t = 0; t < cfg.trials; ++t)
                {
                    zf.push_back(rate[t][w][0]);
                    st.push_back(rate[t][w][qi + 1]);
                    gain.push_back(rate[t][w][qi + 1] - rate[t][w][0]);
                    zf_c += coll[t][w][0];
                    st_c += coll[t][w][qi + 1];
                }
                const Summary g = summarize(gain);
                const double nt = static_cast<double>(cfg.trials);
                const RegimeInfo zf_reg = classify_regime({p, 0.0, cfg.r_exponent, ArrayKind::ULA});
                const RegimeInfo st_reg = classify_regime({p, q, cfg.r_exponent, ArrayKind::ULA});
                map.add_row({cfg.tx_power_dbm[w], p, q, detail::ll(k), detail::ll(snapshot_count(q, mm)), g.mean,
                             g.ci95, summarize(zf).mean, summarize(st).mean, zf_c / nt, st_c / nt,
                             std::string(to_string(zf_reg.regime)), std::string(to_string(st_reg.regime))});
            }
    }
    map.metadata["r_cell_km"] = r_km;
    rep.tables = {std::move(map)};
    return rep;
}

// ---------------------------------------------------------------------------
// Scheduled sum rate against transmit power.
// Thresholds are grid-searched per scheme and power on pools drawn from
// Rng(seed, 0, t); evaluation pools for cell index i come from Rng(seed, 1 + i, t).

namespace detail
{

inline PoolSampler pool_sampler(const ExperimentConfig &cfg, double r_km)
{
    return [cfg, r_km](Rng &rng) {
        return CandidatePool{draw_users(cfg.u_candidates, r_km, cfg.altitude_km, placement_for(cfg.array), rng,
                                        cfg.link()),
                             cfg.array, cfg.l_snapshots};
    };
}

struct TunedAlphas
{
    std::vector<double> sds; // per power
    std::vector<double> sus;
};

inline TunedAlphas tune_alphas(const ExperimentConfig &cfg, double r_km, std::vector<double> &rhos,
                               ResultTable *log)
{
    std::vector<double> grid = cfg.alpha_grid;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const PoolSampler sampler = pool_sampler(cfg, r_km);
    TunedAlphas out;
    for (Scheme s : {Scheme::StabSds, Scheme::ZfSus})
    {
        const auto mean =
            threshold_objective(sampler, s, cfg.k_users, rhos, grid, cfg.tune_trials, cfg.seed, cfg.threads);
        auto &dest = s == Scheme::StabSds ? out.sds : out.sus;
        for (std::size_t w = 0; w < rhos.size(); ++w)
        {
            std::size_t best = 0;
            for (std::size_t a = 1; a < grid.size(); ++a)
                if (mean[a][w] > mean[best][w])
                    best = a;
            dest.push_back(grid[best]);
            if (log)
                for (std::size_t a = 0; a < grid.size(); ++a)
                    log->add_row({r_km, cfg.tx_power_dbm[w], std::string(s == Scheme::StabSds ? "STAB+SDS" : "ZF+SUS"),
                                  grid[a], mean[a][w], static_cast<long long>(a == best)});
        }
    }
    return out;
}

inline void validate_sweep(const ExperimentConfig &cfg, const char *name)
{
    cfg.validate();
    require_array(cfg, ArrayKind::UPA, name);
    require_nonempty(cfg.tx_power_dbm, "tx_power_dbm");
    require_nonempty(cfg.r_cell_km, "r_cell_km");
    require_nonempty(cfg.alpha_grid, "alpha_grid");
}

} // namespace detail

inline Report run_tune_alpha(ExperimentConfig cfg)
{
    detail::validate_sweep(cfg, "tune-alpha");
    Report rep{Driver::TuneAlpha, cfg, {}};
    ResultTable log("alpha_tuning", {"r_cell_km", "tx_power_dbm", "scheme", "alpha", "mean_rate", "chosen"});
    std::vector<double> rhos;
    for (double p : cfg.tx_power_dbm)
        rhos.push_back(cfg.rho(p));
    for (double r_km : cfg.r_cell_km)
        detail::tune_alphas(cfg, r_km, rhos, &log);
    log.metadata["tune_trials"] = cfg.tune_trials;
    rep.tables = {std::move(log)};
    return rep;
}

inline const std::vector<std::string> &sweep_schemes()
{
    static const std::vector<std::string> names{"STAB+SDS", "ZF+SUS", "MRT", "TDMA"};
    return names;
}

inline Report run_power_sweep(ExperimentConfig cfg)
{
    detail::validate_sweep(cfg, "power-sweep");
    Report rep{Driver::PowerSweep, cfg, {}};
    ResultTable sweep("power_sweep", {"r_cell_km", "tx_power_dbm", "scheme", "alpha", "mean_rate", "ci95",
                                      "mean_selected", "collapse_fraction", "stab_minus_mean", "stab_minus_ci95"});
    ResultTable per_trial("power_sweep_trials",
                          {"r_cell_km", "tx_power_dbm", "trial", "scheme", "sum_rate", "selected"});
    ResultTable log("alpha_tuning", {"r_cell_km", "tx_power_dbm", "scheme", "alpha", "mean_rate", "chosen"});

    const std::size_t np = cfg.tx_power_dbm.size();
    const std::size_t ns = sweep_schemes().size();
    std::vector<double> rhos;
    for (double p : cfg.tx_power_dbm)
        rhos.push_back(cfg.rho(p));

    for (std::size_t ri = 0; ri < cfg.r_cell_km.size(); ++ri)
    {
        const double r_km = cfg.r_cell_km[ri];
        const detail::TunedAlphas alphas = detail::tune_alphas(cfg, r_km, rhos, &log);
        const PoolSampler sampler = detail::pool_sampler(cfg, r_km);

        // [trial][power * ns + scheme] -> (rate, selected, collapsed)
        struct Cellv
        {
            double rate = 0.0;
            std::size_t selected = 0;
            bool collapsed = false;
        };
        std::vector<std::vector<Cellv>> out(cfg.trials, std::vector<Cellv>(np * ns));
        parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
            Rng rng(cfg.seed, 1 + ri, t);
            const CandidatePool pool = sampler(rng);
            const ChannelMatrix spatial = build_channel(pool.users, pool.array);
            std::map<double, std::vector<std::size_t>> sds_cache, sus_cache;
            const auto tdma_set = best_norm_select(spatial.entries, cfg.k_users);
            const ChannelMatrix tdma_h{spatial.entries(Eigen::all, std::vector<Eigen::Index>(tdma_set.begin(), tdma_set.end())),
                                       pool.array};
            for (std::size_t w = 0; w < np; ++w)
            {
                auto sds_it = sds_cache.find(alphas.sds[w]);
                if (sds_it == sds_cache.end())
                    sds_it = sds_cache.emplace(alphas.sds[w], schedule(pool, Scheme::StabSds, cfg.k_users, alphas.sds[w])).first;
                auto sus_it = sus_cache.find(alphas.sus[w]);
                if (sus_it == sus_cache.end())
                    sus_it = sus_cache.emplace(alphas.sus[w], schedule(pool, Scheme::ZfSus, cfg.k_users, alphas.sus[w])).first;
                const auto &sds = sds_it->second;
                const auto &sus = sus_it->second;

                const RateReport st = scheduled_rate(pool, Scheme::StabSds, sds, rhos[w]);
                const RateReport zf = scheduled_rate(pool, Scheme::ZfSus, sus, rhos[w]);
                const ChannelMatrix mrt_h{spatial.entries(Eigen::all, std::vector<Eigen::Index>(sus.begin(), sus.end())),
                                          pool.array};
                const RateReport mrt = mrt_sum_rate(mrt_h, rhos[w]);
                const RateReport tdma = tdma_sum_rate(tdma_h, rhos[w]);
                out[t][w * ns + 0] = {st.sum_rate, sds.size(), st.collapsed};
                out[t][w * ns + 1] = {zf.sum_rate, sus.size(), zf.collapsed};
                out[t][w * ns + 2] = {mrt.sum_rate, sus.size(), false};
                out[t][w * ns + 3] = {tdma.sum_rate, tdma_set.size(), false};
            }
        });

        for (std::size_t w = 0; w < np; ++w)
        {
            const double p_dbm = cfg.tx_power_dbm[w];
            for (std::size_t t = 0; t < cfg.trials; ++t)
                for (std::size_t s = 0; s < ns; ++s)
                    per_trial.add_row({r_km, p_dbm, detail::ll(t), sweep_schemes()[s], out[t][w * ns + s].rate,
                                       detail::ll(out[t][w * ns + s].selected)});
            for (std::size_t s = 0; s < ns; ++s)
            {
                std::vector<double> rate, diff;
                double sel = 0.0, coll = 0.0;
                for (std::size_t t = 0; t < cfg.trials; ++t)
                {
                    rate.push_back(out[t][w * ns + s].rate);
                    diff.push_back(out[t][w * ns].rate - out[t][w * ns + s].rate);
                    sel += static_cast<double>(out[t][w * ns + s].selected);
                    coll += out[t][w * ns + s].collapsed ? 1.0 : 0.0;
                }
                const double nt = static_cast<double>(cfg.trials);
                const Summary r = summarize(rate);
                const Summary d = summarize(diff);
                const double alpha = s == 0 ? alphas.sds[w] : (s == 3 ? 0.0 : alphas.sus[w]);
                sweep.add_row({r_km, p_dbm, sweep_schemes()[s], alpha, r.mean, r.ci95, sel / nt, coll / nt, d.mean,
                               d.ci95});
            }
        }
    }
    sweep.metadata["stab_minus"] = "paired per-trial difference STAB+SDS minus the row's scheme";
    rep.tables = {std::move(sweep), std::move(per_trial), std::move(log)};
    return rep;
}

// ---------------------------------------------------------------------------
// Balls-and-bins max load against M at a fixed scaling point.
// Trial t at list index i uses Rng(seed, i, t).

inline Report run_maxload_study(ExperimentConfig cfg)
{
    cfg.validate();
    if (cfg.m_list.size() < 2)
        throw ConfigError("m_list needs at least two entries");
    if (!std::is_sorted(cfg.m_list.begin(), cfg.m_list.end()) ||
        std::adjacent_find(cfg.m_list.begin(), cfg.m_list.end()) != cfg.m_list.end())
        throw ConfigError("m_list must be strictly ascending");
    const ScalingPoint point{cfg.p_exponent, cfg.q_exponent, cfg.r_exponent, cfg.array.kind};
    try
    {
        point.validate();
    }
    catch (const std::exception &e)
    {
        throw ConfigError(e.what());
    }

    Report rep{Driver::MaxLoad, cfg, {}};
    ResultTable loads("maxload", {"m", "k_users", "n_bins", "mean_max_load", "q10", "q50", "q90", "pigeonhole",
                                  "predicted"});
    ResultTable fit("maxload_fit", {"p", "q", "r", "regime", "excess", "slope", "intercept"});

    std::vector<double> lx, ly;
    for (std::size_t mi = 0; mi < cfg.m_list.size(); ++mi)
    {
        const std::size_t m = cfg.m_list[mi];
        const std::size_t k = user_count(point.p, m);
        const std::size_t b = bin_count(point, m);
        std::vector<double> maxes(cfg.trials);
        parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
            Rng rng(cfg.seed, mi, t);
            std::vector<std::array<double, 1>> pts(k);
            for (auto &pt : pts)
                pt[0] = rng.uniform() * static_cast<double>(b);
            const std::array<BinAxis, 1> axes{BinAxis{0.0, 1.0, b}};
            maxes[t] = static_cast<double>(max_load<1>(pts, axes).max_load);
        });
        const Summary s = summarize(maxes);
        const std::size_t pigeon = (k + b - 1) / b;
        loads.add_row({detail::ll(m), detail::ll(k), detail::ll(b), s.mean, quantile(maxes, 0.1),
                       quantile(maxes, 0.5), quantile(maxes, 0.9), detail::ll(pigeon),
                       predicted_max_load(point, m)});
        lx.push_back(std::log(static_cast<double>(m)));
        ly.push_back(std::log(s.mean));
    }
    const LineFit f = fit_line(lx, ly);
    const RegimeInfo info = classify_regime(point);
    fit.add_row({point.p, point.q, point.r, std::string(to_string(info.regime)), info.excess, f.slope, f.intercept});
    rep.tables = {std::move(loads), std::move(fit)};
    return rep;
}

inline Report run_driver(Driver d, const ExperimentConfig &cfg)
{
    switch (d)
    {
    case Driver::Cdf:
        return run_cdf(cfg);
    case Driver::BoundChain:
        return run_bound_chain(cfg);
    case Driver::GainMap:
        return run_gain_map(cfg);
    case Driver::PowerSweep:
        return run_power_sweep(cfg);
    case Driver::MaxLoad:
        return run_maxload_study(cfg);
    case Driver::TuneAlpha:
        return run_tune_alpha(cfg);
    }
    throw ConfigError("unknown driver");
}

} // namespace stabsim::experiments
