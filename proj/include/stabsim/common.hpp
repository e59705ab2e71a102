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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace stabsim
{

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 3.0e8; // m/s

// Zero-sized arrays, snapshot counts, mismatched shapes.
class InvalidDimension : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// Unrecoverable breakdown of a numerical kernel (e.g. eigensolver did not converge).
class NumericalFailure : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Bad experiment configuration: out-of-range parameters, unreachable conditioning.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// floor() that tolerates pow() landing a hair below an exact integer.
inline std::size_t robust_floor(double x)
{
    if (!(x >= 0.0))
        return 0;
    return static_cast<std::size_t>(std::floor(x + 1e-9));
}

} // namespace stabsim
