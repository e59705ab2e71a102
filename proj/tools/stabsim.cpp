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

#include "stabsim/crowding.hpp"
#include "stabsim/experiments/drivers.hpp"
#include "stabsim/experiments/plot.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

namespace
{

using namespace stabsim;
using namespace stabsim::experiments;

struct CommonFlags
{
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::string out;
    std::size_t threads = 1;
    bool svg = false;
};

void add_common(CLI::App *sub, CommonFlags &f, const std::string &default_out)
{
    f.out = default_out;
    sub->add_option("--config", f.config, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option("--seed", f.seed, "master seed");
    sub->add_option("--trials", f.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    sub->add_option("--out", f.out, "output directory")->capture_default_str();
    sub->add_option("--threads", f.threads, "worker threads (0 = all cores)")->capture_default_str();
    sub->add_flag("--svg", f.svg, "also write an SVG figure");
}

int run(Driver d, const CommonFlags &f)
{
    ExperimentConfig cfg = defaults_for(d);
    if (!f.config.empty())
        load_config_file(cfg, f.config);
    if (f.seed)
        cfg.seed = *f.seed;
    if (f.trials)
        cfg.trials = *f.trials;
    cfg.threads = resolve_threads(f.threads);
    const Report rep = run_driver(d, cfg);
    write_report(rep, f.out);
    for (const auto &t : rep.tables)
        std::printf("%s/%s.csv (%zu rows)\n", f.out.c_str(), t.name.c_str(), t.rows.size());
    if (f.svg)
        for (const auto &[name, svg] : plot::figures(rep))
        {
            write_text(std::filesystem::path(f.out) / name, svg);
            std::printf("%s/%s\n", f.out.c_str(), name.c_str());
        }
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"stabsim: multiuser MIMO experiments for LoS-dominant LEO downlinks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    const std::vector<std::pair<Driver, std::string>> drivers{
        {Driver::Cdf, "sum-rate CDFs of spatial ZF and STAB versus cell size"},
        {Driver::BoundChain, "upper-bound chain versus crowding level"},
        {Driver::GainMap, "STAB-minus-ZF gain over the (p, q) exponent grid"},
        {Driver::PowerSweep, "scheduled sum rate versus transmit power"},
        {Driver::MaxLoad, "balls-and-bins max load versus array size"},
        {Driver::TuneAlpha, "grid search of the selection threshold"},
    };
    std::vector<CommonFlags> flags(drivers.size());
    std::vector<CLI::App *> subs;
    for (std::size_t i = 0; i < drivers.size(); ++i)
    {
        const std::string name = driver_name(drivers[i].first);
        subs.push_back(app.add_subcommand(name, drivers[i].second));
        add_common(subs.back(), flags[i], "out/" + name);
    }

    double cp = 0.5, cq = 0.0, cr = 0.5;
    std::string carray = "ULA";
    std::optional<std::size_t> cm;
    auto *classify = app.add_subcommand("classify", "regime lookup for a (p, q, r) triple");
    classify->add_option("--p", cp, "user exponent")->required();
    classify->add_option("--q", cq, "snapshot exponent")->capture_default_str();
    classify->add_option("--r", cr, "cell-size exponent")->required();
    classify->add_option("--array", carray, "ULA or UPA")->capture_default_str();
    classify->add_option("--m", cm, "array size for bin and load figures");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try
    {
        if (classify->parsed())
        {
            const ScalingPoint pt{cp, cq, cr, parse_array_kind(carray)};
            try
            {
                pt.validate();
            }
            catch (const std::invalid_argument &e)
            {
                throw ConfigError(e.what());
            }
            const RegimeInfo info = classify_regime(pt);
            nlohmann::ordered_json j;
            j["p"] = cp;
            j["q"] = cq;
            j["r"] = cr;
            j["array"] = carray;
            j["regime"] = to_string(info.regime);
            j["excess"] = info.excess;
            j["stab"] = info.stab;
            j["rate_scaling"] = info.rate_scaling;
            if (cm)
            {
                j["m"] = *cm;
                j["k_users"] = user_count(cp, *cm);
                j["n_bins"] = bin_count(pt, *cm);
                j["predicted_max_load"] = predicted_max_load(pt, *cm);
            }
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        for (std::size_t i = 0; i < drivers.size(); ++i)
            if (subs[i]->parsed())
                return run(drivers[i].first, flags[i]);
    }
    catch (const ConfigError &e)
    {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
    catch (const NumericalFailure &e)
    {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
