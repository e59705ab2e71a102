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

#include "stabsim/experiments/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace stabsim::experiments::plot
{

struct Series
{
    std::string label;
    std::vector<double> x, y;
};

struct Axes
{
    std::string title, x_label, y_label;
    bool log_x = false;
    bool log_y = false;
};

namespace detail
{

inline std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

inline std::string escape(const std::string &s)
{
    std::string out;
    for (char c : s)
    {
        if (c == '<')
            out += "&lt;";
        else if (c == '>')
            out += "&gt;";
        else if (c == '&')
            out += "&amp;";
        else
            out += c;
    }
    return out;
}

inline const char *color(std::size_t i)
{
    static const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2",
                                    "#7f7f7f", "#bcbd22", "#17becf"};
    return palette[i % 10];
}

} // namespace detail

/// Static line chart. Points that are non-positive on a log axis are skipped.
inline std::string line_chart(const Axes &ax, const std::vector<Series> &series)
{
    constexpr double W = 640, H = 420, L = 70, R = 170, T = 40, B = 55;
    auto tx = [&](double v) { return ax.log_x ? std::log10(v) : v; };
    auto ty = [&](double v) { return ax.log_y ? std::log10(v) : v; };
    auto ok = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!ax.log_x || x > 0) && (!ax.log_y || y > 0);
    };
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto &s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i)
            if (ok(s.x[i], s.y[i]))
            {
                x0 = std::min(x0, tx(s.x[i]));
                x1 = std::max(x1, tx(s.x[i]));
                y0 = std::min(y0, ty(s.y[i]));
                y1 = std::max(y1, ty(s.y[i]));
            }
    if (!std::isfinite(x0))
        x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 == x0)
        x1 = x0 + 1;
    if (y1 == y0)
        y1 = y0 + 1;
    auto px = [&](double v) { return L + (tx(v) - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double v) { return H - B - (ty(v) - y0) / (y1 - y0) * (H - T - B); };

    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::num(W) + "\" height=\"" +
                    detail::num(H) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + detail::num(W / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         detail::escape(ax.title) + "</text>\n";
    s += "<rect x=\"" + detail::num(L) + "\" y=\"" + detail::num(T) + "\" width=\"" + detail::num(W - L - R) +
         "\" height=\"" + detail::num(H - T - B) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i)
    {
        const double fx = x0 + (x1 - x0) * i / 4.0, fy = y0 + (y1 - y0) * i / 4.0;
        const double vx = ax.log_x ? std::pow(10.0, fx) : fx, vy = ax.log_y ? std::pow(10.0, fy) : fy;
        s += "<text x=\"" + detail::num(px(vx)) + "\" y=\"" + detail::num(H - B + 16) +
             "\" text-anchor=\"middle\">" + detail::num(vx) + "</text>\n";
        s += "<text x=\"" + detail::num(L - 6) + "\" y=\"" + detail::num(py(vy) + 4) + "\" text-anchor=\"end\">" +
             detail::num(vy) + "</text>\n";
    }
    s += "<text x=\"" + detail::num(L + (W - L - R) / 2) + "\" y=\"" + detail::num(H - 12) +
         "\" text-anchor=\"middle\">" + detail::escape(ax.x_label) + "</text>\n";
    s += "<text transform=\"translate(16," + detail::num(T + (H - T - B) / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + detail::escape(ax.y_label) + "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k)
    {
        std::string pts;
        for (std::size_t i = 0; i < series[k].x.size(); ++i)
            if (ok(series[k].x[i], series[k].y[i]))
                pts += detail::num(px(series[k].x[i])) + "," + detail::num(py(series[k].y[i])) + " ";
        s += "<polyline fill=\"none\" stroke=\"" + std::string(detail::color(k)) + "\" stroke-width=\"1.8\" points=\"" +
             pts + "\"/>\n";
        const double ly = T + 14 + 18.0 * static_cast<double>(k);
        s += "<line x1=\"" + detail::num(W - R + 10) + "\" x2=\"" + detail::num(W - R + 34) + "\" y1=\"" +
             detail::num(ly - 4) + "\" y2=\"" + detail::num(ly - 4) + "\" stroke=\"" + detail::color(k) +
             "\" stroke-width=\"2\"/>\n";
        s += "<text x=\"" + detail::num(W - R + 40) + "\" y=\"" + detail::num(ly) + "\">" +
             detail::escape(series[k].label) + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

/// Heat map over a rectangular grid with a diverging blue/white/red scale
/// centred at zero. values[i][j] belongs to (ys[i], xs[j]).
inline std::string heat_map(const Axes &ax, const std::vector<double> &xs, const std::vector<double> &ys,
                            const std::vector<std::vector<double>> &values)
{
    constexpr double W = 560, H = 460, L = 70, R = 40, T = 40, B = 55;
    double amax = 0.0;
    for (const auto &row : values)
        for (double v : row)
            amax = std::max(amax, std::abs(v));
    if (amax == 0.0)
        amax = 1.0;
    const double cw = (W - L - R) / static_cast<double>(std::max<std::size_t>(1, xs.size()));
    const double ch = (H - T - B) / static_cast<double>(std::max<std::size_t>(1, ys.size()));
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::num(W) + "\" height=\"" +
                    detail::num(H) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + detail::num(W / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         detail::escape(ax.title) + "</text>\n";
    for (std::size_t i = 0; i < ys.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j)
        {
            const double v = values[i][j] / amax;
            const int fade = static_cast<int>(std::lround(255.0 * (1.0 - std::min(1.0, std::abs(v)))));
            char fill[16];
            if (v >= 0)
                std::snprintf(fill, sizeof fill, "#ff%02x%02x", fade, fade);
            else
                std::snprintf(fill, sizeof fill, "#%02x%02xff", fade, fade);
            const double x = L + cw * static_cast<double>(j);
            const double y = H - B - ch * static_cast<double>(i + 1);
            s += "<rect x=\"" + detail::num(x) + "\" y=\"" + detail::num(y) + "\" width=\"" + detail::num(cw) +
                 "\" height=\"" + detail::num(ch) + "\" fill=\"" + fill + "\" stroke=\"#999\"/>\n";
            s += "<text x=\"" + detail::num(x + cw / 2) + "\" y=\"" + detail::num(y + ch / 2 + 4) +
                 "\" text-anchor=\"middle\">" + detail::num(values[i][j]) + "</text>\n";
        }
    for (std::size_t j = 0; j < xs.size(); ++j)
        s += "<text x=\"" + detail::num(L + cw * (static_cast<double>(j) + 0.5)) + "\" y=\"" +
             detail::num(H - B + 16) + "\" text-anchor=\"middle\">" + detail::num(xs[j]) + "</text>\n";
    for (std::size_t i = 0; i < ys.size(); ++i)
        s += "<text x=\"" + detail::num(L - 6) + "\" y=\"" +
             detail::num(H - B - ch * (static_cast<double>(i) + 0.5) + 4) + "\" text-anchor=\"end\">" +
             detail::num(ys[i]) + "</text>\n";
    s += "<text x=\"" + detail::num(L + (W - L - R) / 2) + "\" y=\"" + detail::num(H - 12) +
         "\" text-anchor=\"middle\">" + detail::escape(ax.x_label) + "</text>\n";
    s += "<text transform=\"translate(16," + detail::num(T + (H - T - B) / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + detail::escape(ax.y_label) + "</text>\n";
    s += "</svg>\n";
    return s;
}

namespace detail
{

/// Groups rows of \p t by the label produced by \p key, keeping first-seen order.
template <class Key>
std::vector<Series> group(const ResultTable &t, Key key, const std::string &xcol, const std::string &ycol)
{
    std::vector<Series> out;
    std::map<std::string, std::size_t> where;
    for (std::size_t r = 0; r < t.rows.size(); ++r)
    {
        const std::string k = key(r);
        auto it = where.find(k);
        if (it == where.end())
        {
            it = where.emplace(k, out.size()).first;
            out.push_back(Series{k, {}, {}});
        }
        out[it->second].x.push_back(t.number(r, xcol));
        out[it->second].y.push_back(t.number(r, ycol));
    }
    return out;
}

} // namespace detail

/// One figure per driver: (file name, SVG text).
inline std::vector<std::pair<std::string, std::string>> figures(const Report &rep)
{
    std::vector<std::pair<std::string, std::string>> out;
    switch (rep.driver)
    {
    case Driver::Cdf: {
        const auto &g = rep.table("cdf_grid");
        auto series = detail::group(
            g, [&](std::size_t r) { return g.text(r, "scheme") + " R=" + detail::num(g.number(r, "r_cell_km")) + " km, P=" + detail::num(g.number(r, "tx_power_dbm")); },
            "rate", "cdf");
        out.emplace_back("cdf.svg", line_chart({"Sum-rate CDF", "sum rate [bit/s/Hz]", "CDF"}, series));
        break;
    }
    case Driver::BoundChain: {
        const auto &t = rep.table("bound_chain");
        std::vector<Series> series;
        for (const char *col : {"empirical", "submatrix", "equispaced", "cluster_bound"})
        {
            Series s{col, {}, {}};
            for (std::size_t r = 0; r < t.rows.size(); ++r)
            {
                s.x.push_back(t.number(r, "n"));
                s.y.push_back(t.number(r, col));
            }
            series.push_back(std::move(s));
        }
        out.emplace_back("bound_chain.svg",
                         line_chart({"Upper-bound chain", "max load n", "sum rate [bit/s/Hz]", false, true}, series));
        break;
    }
    case Driver::GainMap: {
        const auto &t = rep.table("gain_map");
        const auto &c = rep.config;
        std::vector<std::vector<double>> v(c.p_grid.size(), std::vector<double>(c.q_grid.size(), 0.0));
        std::size_t k = 0; // rows are p-major, q-minor within each power
        for (std::size_t r = 0; r < t.rows.size() && k < c.p_grid.size() * c.q_grid.size(); ++r)
            if (t.number(r, "tx_power_dbm") == c.tx_power_dbm.front())
            {
                v[k / c.q_grid.size()][k % c.q_grid.size()] = t.number(r, "mean_gain");
                ++k;
            }
        out.emplace_back("gain_map.svg", heat_map({"Mean STAB minus ZF sum rate", "q", "p"}, c.q_grid, c.p_grid, v));
        break;
    }
    case Driver::PowerSweep: {
        const auto &t = rep.table("power_sweep");
        auto series = detail::group(
            t, [&](std::size_t r) { return t.text(r, "scheme") + " R=" + detail::num(t.number(r, "r_cell_km")); },
            "tx_power_dbm", "mean_rate");
        out.emplace_back("power_sweep.svg",
                         line_chart({"Mean sum rate", "transmit power [dBm]", "sum rate [bit/s/Hz]"}, series));
        break;
    }
    case Driver::MaxLoad: {
        const auto &t = rep.table("maxload");
        Series emp{"mean max load", {}, {}}, pred{"predicted", {}, {}};
        for (std::size_t r = 0; r < t.rows.size(); ++r)
        {
            emp.x.push_back(t.number(r, "m"));
            emp.y.push_back(t.number(r, "mean_max_load"));
            pred.x.push_back(t.number(r, "m"));
            pred.y.push_back(t.number(r, "predicted"));
        }
        out.emplace_back("maxload.svg",
                         line_chart({"Max load", "M", "max load", true, true}, {std::move(emp), std::move(pred)}));
        break;
    }
    case Driver::TuneAlpha: {
        const auto &t = rep.table("alpha_tuning");
        auto series = detail::group(
            t, [&](std::size_t r) { return t.text(r, "scheme") + " P=" + detail::num(t.number(r, "tx_power_dbm")); },
            "alpha", "mean_rate");
        out.emplace_back("alpha_tuning.svg",
                         line_chart({"Threshold search", "alpha", "mean sum rate [bit/s/Hz]"}, series));
        break;
    }
    }
    return out;
}

} // namespace stabsim::experiments::plot
