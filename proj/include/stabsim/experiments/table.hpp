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

#include "stabsim/experiments/config.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace stabsim::experiments
{

using Cell = std::variant<long long, double, std::string>;

/// Column-ordered numeric records plus a metadata document.
struct ResultTable
{
    std::string name;
    std::vector<std::string> schema;
    std::vector<std::vector<Cell>> rows;
    nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

    ResultTable() = default;
    ResultTable(std::string n, std::vector<std::string> cols) : name(std::move(n)), schema(std::move(cols)) {}

    void add_row(std::vector<Cell> row)
    {
        if (row.size() != schema.size())
            throw std::logic_error("ResultTable '" + name + "': row width does not match schema");
        rows.push_back(std::move(row));
    }

    std::size_t column(const std::string &col) const
    {
        for (std::size_t i = 0; i < schema.size(); ++i)
            if (schema[i] == col)
                return i;
        throw std::out_of_range("ResultTable '" + name + "': no column '" + col + "'");
    }

    double number(std::size_t row, const std::string &col) const
    {
        const Cell &c = rows.at(row).at(column(col));
        if (const auto *d = std::get_if<double>(&c))
            return *d;
        if (const auto *i = std::get_if<long long>(&c))
            return static_cast<double>(*i);
        throw std::invalid_argument("ResultTable '" + name + "': column '" + col + "' is not numeric");
    }

    std::string text(std::size_t row, const std::string &col) const
    {
        return std::get<std::string>(rows.at(row).at(column(col)));
    }

    std::string csv() const
    {
        std::string out;
        for (std::size_t i = 0; i < schema.size(); ++i)
            out += (i ? "," : "") + schema[i];
        out += '\n';
        char buf[64];
        for (const auto &row : rows)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
            {
                if (i)
                    out += ',';
                if (const auto *d = std::get_if<double>(&row[i]))
                {
                    std::snprintf(buf, sizeof buf, "%.17g", *d);
                    out += buf;
                }
                else if (const auto *n = std::get_if<long long>(&row[i]))
                    out += std::to_string(*n);
                else
                    out += std::get<std::string>(row[i]);
            }
            out += '\n';
        }
        return out;
    }
};

/// Output of one driver run.
struct Report
{
    Driver driver = Driver::Cdf;
    ExperimentConfig config;
    std::vector<ResultTable> tables;

    const ResultTable &table(const std::string &name) const
    {
        for (const auto &t : tables)
            if (t.name == name)
                return t;
        throw std::out_of_range("Report: no table '" + name + "'");
    }
};

inline nlohmann::ordered_json table_metadata(const Report &report, const ResultTable &t)
{
    nlohmann::ordered_json m;
    m["table"] = t.name;
    m["driver"] = driver_name(report.driver);
    m["version"] = kVersion;
    m["seed"] = report.config.seed;
    m["trials"] = report.config.trials;
    m["columns"] = t.schema;
    m["rows"] = t.rows.size();
    for (const auto &[k, v] : t.metadata.items())
        m[k] = v;
    m["config"] = to_json(report.config);
    return m;
}

inline void write_text(const std::filesystem::path &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

/// Writes <name>.csv and <name>.meta.json per table plus config.json.
inline void write_report(const Report &report, const std::filesystem::path &dir)
{
    std::filesystem::create_directories(dir);
    for (const auto &t : report.tables)
    {
        write_text(dir / (t.name + ".csv"), t.csv());
        write_text(dir / (t.name + ".meta.json"), table_metadata(report, t).dump(2) + "\n");
    }
    write_text(dir / "config.json", to_json(report.config).dump(2) + "\n");
}

} // namespace stabsim::experiments
