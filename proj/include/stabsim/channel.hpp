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

#include "stabsim/common.hpp"
#include "stabsim/random.hpp"

#include <vector>

namespace stabsim
{

enum class ArrayKind
{
    ULA,
    UPA
};

/// Antenna geometry with implicit half-wavelength spacing. Spatial
/// frequencies are dimensionless and alias on [-1/2, 1/2).
struct ArrayConfig
{
    ArrayKind kind = ArrayKind::ULA;
    std::size_t m_x = 1;
    std::size_t m_y = 1;

    static ArrayConfig ula(std::size_t m) { return {ArrayKind::ULA, m, 1}; }
    static ArrayConfig upa(std::size_t mx, std::size_t my) { return {ArrayKind::UPA, mx, my}; }

    std::size_t elements() const { return m_x * m_y; }

    void validate() const
    {
        if (m_x == 0 || m_y == 0)
            throw InvalidDimension("ArrayConfig: element counts must be positive");
        if (kind == ArrayKind::ULA && m_y != 1)
            throw InvalidDimension("ArrayConfig: a ULA has m_y = 1");
    }
};

struct UserState
{
    double x_km = 0.0;
    double y_km = 0.0;
    double omega = 0.0; // normalized residual Doppler, [-1/2, 1/2)
    cplx beta{1.0, 0.0};
    double u_x = 0.0;
    double u_y = 0.0;
};

/// Column k of H is sqrt(M) beta_k a_k.
struct ChannelMatrix
{
    CMatrix entries;
    ArrayConfig array;

    std::size_t users() const { return static_cast<std::size_t>(entries.cols()); }
    std::size_t elements() const { return static_cast<std::size_t>(entries.rows()); }
};

/// Column k is sqrt(ML) beta_k (b_k kron a_k); rows are L blocks of M.
struct SpaceTimeChannel
{
    CMatrix entries;
    ArrayConfig array;
    std::size_t snapshots = 1;

    std::size_t users() const { return static_cast<std::size_t>(entries.cols()); }
};

namespace detail
{
inline CVector phase_ramp(double x, std::size_t m)
{
    if (m == 0)
        throw InvalidDimension("steering vector length must be positive");
    if (!std::isfinite(x))
        throw std::invalid_argument("steering vector frequency must be finite");
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    CVector a(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i)
        a(static_cast<Eigen::Index>(i)) = std::polar(scale, 2.0 * kPi * static_cast<double>(i) * x);
    return a;
}
} // namespace detail

/// a(x; m): element i is exp(j 2 pi i x) / sqrt(m).
inline CVector steering_vector(double x, std::size_t m) { return detail::phase_ramp(x, m); }

/// a(u_y; m_y) kron a(u_x; m_x). Element (iy, ix) lives at iy * m_x + ix.
inline CVector upa_steering(double u_x, double u_y, std::size_t m_x, std::size_t m_y)
{
    const CVector ax = steering_vector(u_x, m_x);
    const CVector ay = steering_vector(u_y, m_y);
    CVector a(static_cast<Eigen::Index>(m_x * m_y));
    for (std::size_t iy = 0; iy < m_y; ++iy)
        for (std::size_t ix = 0; ix < m_x; ++ix)
            a(static_cast<Eigen::Index>(iy * m_x + ix)) =
                ay(static_cast<Eigen::Index>(iy)) * ax(static_cast<Eigen::Index>(ix));
    return a;
}

/// b(omega; l): slow-time phase ramp across l snapshots.
inline CVector temporal_steering(double omega, std::size_t l) { return detail::phase_ramp(omega, l); }

/// Spatial signature of a user for the given array (ULA uses u_x only).
inline CVector array_response(const UserState &user, const ArrayConfig &array)
{
    array.validate();
    if (array.kind == ArrayKind::ULA)
        return steering_vector(user.u_x, array.m_x);
    return upa_steering(user.u_x, user.u_y, array.m_x, array.m_y);
}

/// Free-space amplitude gain sqrt((c / (4 pi f_c d))^alpha), d in km.
inline double friis_gain(double distance_km, double carrier_hz, double alpha)
{
    if (!(distance_km > 0.0))
        throw std::domain_error("friis_gain: distance must be positive");
    if (!(carrier_hz > 0.0))
        throw std::domain_error("friis_gain: carrier frequency must be positive");
    const double d_m = distance_km * 1e3;
    return std::pow(kSpeedOfLight / (4.0 * kPi * carrier_hz * d_m), 0.5 * alpha);
}

enum class Placement
{
    Line,  // x uniform on [-R, R], y = 0
    Square // (x, y) uniform on [-R, R]^2
};

struct LinkParams
{
    double carrier_hz = 1.9925e9;
    double path_loss_exponent = 2.0;
};

/// Draws k users i.i.d. over the service area. Per user the generator is
/// consumed in the order x, [y], omega. Spatial frequencies use the
/// small-angle map u = x / (2H); beta is the real Friis gain at the slant range.
inline std::vector<UserState> draw_users(std::size_t k, double r_cell_km, double h_alt_km, Placement placement,
                                         Rng &rng, const LinkParams &link = {})
{
    if (k == 0)
        throw InvalidDimension("draw_users: need at least one user");
    if (!(r_cell_km > 0.0) || !(h_alt_km > 0.0))
        throw std::invalid_argument("draw_users: cell half-width and altitude must be positive");
    std::vector<UserState> users(k);
    for (auto &u : users)
    {
        u.x_km = rng.uniform(-r_cell_km, r_cell_km);
        u.y_km = placement == Placement::Square ? rng.uniform(-r_cell_km, r_cell_km) : 0.0;
        u.omega = rng.uniform(-0.5, 0.5);
        u.u_x = u.x_km / (2.0 * h_alt_km);
        u.u_y = u.y_km / (2.0 * h_alt_km);
        const double slant = std::sqrt(h_alt_km * h_alt_km + u.x_km * u.x_km + u.y_km * u.y_km);
        u.beta = cplx(friis_gain(slant, link.carrier_hz, link.path_loss_exponent), 0.0);
    }
    return users;
}

inline std::vector<UserState> draw_users(std::size_t k, double r_cell_km, double h_alt_km, Placement placement,
                                         std::uint64_t seed, const LinkParams &link = {})
{
    Rng rng(seed);
    return draw_users(k, r_cell_km, h_alt_km, placement, rng, link);
}

inline ChannelMatrix build_channel(const std::vector<UserState> &users, const ArrayConfig &array)
{
    if (users.empty())
        throw InvalidDimension("build_channel: empty user list");
    array.validate();
    const double m = static_cast<double>(array.elements());
    ChannelMatrix h{CMatrix(static_cast<Eigen::Index>(array.elements()), static_cast<Eigen::Index>(users.size())),
                    array};
    for (std::size_t k = 0; k < users.size(); ++k)
        h.entries.col(static_cast<Eigen::Index>(k)) = std::sqrt(m) * users[k].beta * array_response(users[k], array);
    return h;
}

inline SpaceTimeChannel build_spacetime_channel(const std::vector<UserState> &users, const ArrayConfig &array,
                                                std::size_t l)
{
    if (users.empty())
        throw InvalidDimension("build_spacetime_channel: empty user list");
    if (l == 0)
        throw InvalidDimension("build_spacetime_channel: snapshot count must be positive");
    array.validate();
    const std::size_t m = array.elements();
    const double scale = std::sqrt(static_cast<double>(m * l));
    SpaceTimeChannel h{CMatrix(static_cast<Eigen::Index>(m * l), static_cast<Eigen::Index>(users.size())), array, l};
    for (std::size_t k = 0; k < users.size(); ++k)
    {
        const CVector a = array_response(users[k], array);
        const CVector b = temporal_steering(users[k].omega, l);
        const cplx g = scale * users[k].beta;
        for (std::size_t s = 0; s < l; ++s)
            h.entries.block(static_cast<Eigen::Index>(s * m), static_cast<Eigen::Index>(k),
                            static_cast<Eigen::Index>(m), 1) = g * b(static_cast<Eigen::Index>(s)) * a;
    }
    return h;
}

} // namespace stabsim
