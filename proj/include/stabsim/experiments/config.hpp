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

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace stabsim::experiments
{

inline constexpr const char *kVersion = "stabsim 0.1.0";

enum class Driver
{
    Cdf,
    BoundChain,
    GainMap,
    PowerSweep,
    MaxLoad,
    TuneAlpha
};

inline const char *driver_name(Driver d)
{
    switch (d)
    {
    case Driver::Cdf:
        return "cdf";
    case Driver::BoundChain:
        return "bound-chain";
    case Driver::GainMap:
        return "gain-map";
    case Driver::PowerSweep:
        return "power-sweep";
    case Driver::MaxLoad:
        return "maxload";
    case Driver::TuneAlpha:
        return "tune-alpha";
    }
    return "?";
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

/// Flat experiment configuration. Serialized as a single JSON object whose
/// keys match the field names; \c threads is an execution setting and is
/// never written out.
struct ExperimentConfig
{
    // link
    double carrier_hz = 1.9925e9;
    double bandwidth_hz = 5e6;
    double altitude_km = 600.0;
    double noise_density_dbm_hz = -174.0;
    double path_loss_exponent = 2.0;
    std::vector<double> tx_power_dbm{40.0};

    // geometry and load
    ArrayConfig array = ArrayConfig::upa(16, 16);
    std::size_t k_users = 16;
    std::size_t l_snapshots = 3;
    std::vector<double> r_cell_km{60.0, 90.0, 120.0};
    std::size_t u_candidates = 256;

    // Monte Carlo
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    std::vector<double> alpha_grid = linspace(0.1, 1.0, 10);
    std::size_t tune_trials = 100;

    // bound chain
    std::vector<std::size_t> n_values{2, 3, 4, 5, 6};
    std::size_t bins = 16;

    // scaling exponents
    double p_exponent = 0.9;
    double q_exponent = 0.0;
    double r_exponent = 0.5;
    std::vector<double> p_grid = linspace(0.1, 0.9, 6);
    std::vector<double> q_grid = linspace(0.0, 0.8, 6);
    std::vector<std::size_t> m_list{256, 1024, 4096, 16384};

    std::size_t threads = 1;

    /// sigma^2 in dBm: noise density + 10 log10(bandwidth).
    double noise_power_dbm() const { return noise_density_dbm_hz + 10.0 * std::log10(bandwidth_hz); }

    /// Transmit SNR rho = 10^((P - sigma^2) / 10).
    double rho(double tx_dbm) const { return std::pow(10.0, (tx_dbm - noise_power_dbm()) / 10.0); }

    LinkParams link() const { return {carrier_hz, path_loss_exponent}; }

    void validate() const
    {
        auto positive = [](double v, const char *what) {
            if (!(v > 0.0) || !std::isfinite(v))
                throw ConfigError(std::string(what) + " must be positive");
        };
        positive(carrier_hz, "carrier_hz");
        positive(bandwidth_hz, "bandwidth_hz");
        positive(altitude_km, "altitude_km");
        if (!std::isfinite(noise_density_dbm_hz) || !std::isfinite(path_loss_exponent) || path_loss_exponent < 0.0)
            throw ConfigError("noise_density_dbm_hz and path_loss_exponent must be finite (exponent >= 0)");
        if (trials == 0)
            throw ConfigError("trials must be at least 1");
        if (tune_trials == 0)
            throw ConfigError("tune_trials must be at least 1");
        if (k_users == 0 || l_snapshots == 0 || u_candidates == 0 || bins == 0)
            throw ConfigError("k_users, l_snapshots, u_candidates and bins must be positive");
        for (double r : r_cell_km)
            positive(r, "r_cell_km entries");
        for (double a : alpha_grid)
            if (!(a > 0.0 && a <= 1.0))
                throw ConfigError("alpha_grid entries must lie in (0, 1]");
        for (double p : tx_power_dbm)
            if (!std::isfinite(p))
                throw ConfigError("tx_power_dbm entries must be finite");
        try
        {
            array.validate();
        }
        catch (const std::exception &e)
        {
            throw ConfigError(e.what());
        }
    }
};

inline ArrayKind parse_array_kind(const std::string &s)
{
    if (s == "ULA" || s == "ula")
        return ArrayKind::ULA;
    if (s == "UPA" || s == "upa")
        return ArrayKind::UPA;
    throw ConfigError("array must be ULA or UPA, got '" + s + "'");
}

inline nlohmann::ordered_json to_json(const ExperimentConfig &c)
{
    nlohmann::ordered_json j;
    j["carrier_hz"] = c.carrier_hz;
    j["bandwidth_hz"] = c.bandwidth_hz;
    j["altitude_km"] = c.altitude_km;
    j["noise_density_dbm_hz"] = c.noise_density_dbm_hz;
    j["path_loss_exponent"] = c.path_loss_exponent;
    j["tx_power_dbm"] = c.tx_power_dbm;
    j["array"] = c.array.kind == ArrayKind::ULA ? "ULA" : "UPA";
    j["m_x"] = c.array.m_x;
    j["m_y"] = c.array.m_y;
    j["k_users"] = c.k_users;
    j["l_snapshots"] = c.l_snapshots;
    j["r_cell_km"] = c.r_cell_km;
    j["u_candidates"] = c.u_candidates;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["alpha_grid"] = c.alpha_grid;
    j["tune_trials"] = c.tune_trials;
    j["n_values"] = c.n_values;
    j["bins"] = c.bins;
    j["p_exponent"] = c.p_exponent;
    j["q_exponent"] = c.q_exponent;
    j["r_exponent"] = c.r_exponent;
    j["p_grid"] = c.p_grid;
    j["q_grid"] = c.q_grid;
    j["m_list"] = c.m_list;
    return j;
}

/// Overlays the keys present in \p j onto \p c. Unknown keys and type
/// mismatches are configuration errors.
inline void apply_json(ExperimentConfig &c, const nlohmann::json &j)
{
    if (!j.is_object())
        throw ConfigError("configuration must be a JSON object");
    auto get = [&](const std::string &key, auto &field) {
        try
        {
            field = j.at(key).get<std::decay_t<decltype(field)>>();
        }
        catch (const nlohmann::json::exception &e)
        {
            throw ConfigError("config key '" + key + "': " + e.what());
        }
    };
    for (const auto &[key, value] : j.items())
    {
        if (key == "carrier_hz")
            get(key, c.carrier_hz);
        else if (key == "bandwidth_hz")
            get(key, c.bandwidth_hz);
        else if (key == "altitude_km")
            get(key, c.altitude_km);
        else if (key == "noise_density_dbm_hz")
            get(key, c.noise_density_dbm_hz);
        else if (key == "path_loss_exponent")
            get(key, c.path_loss_exponent);
        else if (key == "tx_power_dbm")
        {
            if (value.is_number())
                c.tx_power_dbm = {value.get<double>()};
            else
                get(key, c.tx_power_dbm);
        }
        else if (key == "array")
        {
            std::string s;
            get(key, s);
            c.array.kind = parse_array_kind(s);
            if (c.array.kind == ArrayKind::ULA)
                c.array.m_y = 1;
        }
        else if (key == "m_x")
            get(key, c.array.m_x);
        else if (key == "m_y")
            get(key, c.array.m_y);
        else if (key == "k_users")
            get(key, c.k_users);
        else if (key == "l_snapshots")
            get(key, c.l_snapshots);
        else if (key == "r_cell_km")
        {
            if (value.is_number())
                c.r_cell_km = {value.get<double>()};
            else
                get(key, c.r_cell_km);
        }
        else if (key == "u_candidates")
            get(key, c.u_candidates);
        else if (key == "trials")
            get(key, c.trials);
        else if (key == "seed")
            get(key, c.seed);
        else if (key == "alpha_grid")
            get(key, c.alpha_grid);
        else if (key == "tune_trials")
            get(key, c.tune_trials);
        else if (key == "n_values")
            get(key, c.n_values);
        else if (key == "bins")
            get(key, c.bins);
        else if (key == "p_exponent")
            get(key, c.p_exponent);
        else if (key == "q_exponent")
            get(key, c.q_exponent);
        else if (key == "r_exponent")
            get(key, c.r_exponent);
        else if (key == "p_grid")
            get(key, c.p_grid);
        else if (key == "q_grid")
            get(key, c.q_grid);
        else if (key == "m_list")
            get(key, c.m_list);
        else
            throw ConfigError("unknown config key '" + key + "'");
    }
}

inline void load_config_file(ExperimentConfig &c, const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(in, nullptr, true, true);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    apply_json(c, j);
}

/// Figure-matching defaults per driver.
inline ExperimentConfig defaults_for(Driver d)
{
    ExperimentConfig c;
    switch (d)
    {
    case Driver::Cdf:
        break;
    case Driver::BoundChain:
        c.array = ArrayConfig::ula(256);
        c.tx_power_dbm = {30.0};
        c.trials = 500;
        break;
    case Driver::GainMap:
        c.array = ArrayConfig::ula(256);
        c.r_exponent = 0.6;
        c.trials = 200;
        break;
    case Driver::PowerSweep:
    case Driver::TuneAlpha:
        c.r_cell_km = {60.0};
        c.tx_power_dbm = {30.0, 35.0, 40.0, 45.0, 50.0, 55.0, 60.0};
        break;
    case Driver::MaxLoad:
        c.array = ArrayConfig::ula(256);
        c.p_exponent = 0.9;
        c.r_exponent = 0.5;
        c.trials = 200;
        break;
    }
    return c;
}

} // namespace stabsim::experiments
