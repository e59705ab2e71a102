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

#include <cstdint>
#include <limits>
#include <random>

namespace stabsim
{

/// Seeded generator used everywhere randomness enters. The engine and the
/// seed_seq mixing are fully specified by the standard, and the double
/// conversion below is done by hand, so streams are identical across
/// standard library implementations.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : Rng(seed, 0, 0) {}

    /// Independent stream for (seed, stream, index), e.g. one per Monte Carlo trial.
    Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
    {
        std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(index), hi(index)};
        engine_.seed(seq);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo_v, double hi_v) { return lo_v + (hi_v - lo_v) * uniform(); }

    /// Uniform integer in [0, n), unbiased by rejection.
    std::uint64_t index(std::uint64_t n)
    {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t v;
        do
            v = engine_();
        while (v >= limit);
        return v % n;
    }

  private:
    static std::uint32_t lo(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
    static std::uint32_t hi(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

    std::mt19937_64 engine_;
};

} // namespace stabsim
