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

// Draws one crowded UPA cell and compares spatial ZF with STAB, with and
// without scheduling from a larger candidate pool.

#include "stabsim/precoding.hpp"
#include "stabsim/scheduler.hpp"

#include <cmath>
#include <cstdio>

int main()
{
    using namespace stabsim;

    const ArrayConfig array = ArrayConfig::upa(16, 16);
    const std::size_t k = 16, l = 3, u = 256;
    const double noise_dbm = -174.0 + 10.0 * std::log10(5e6);
    const double rho = std::pow(10.0, (40.0 - noise_dbm) / 10.0);

    Rng rng(7);
    const auto users = draw_users(k, 60.0, 600.0, Placement::Square, rng);
    const RateReport zf = zf_sum_rate(build_channel(users, array), rho);
    const RateReport st = stab_sum_rate(build_spacetime_channel(users, array, l), rho, l);
    std::printf("random 16 users, R = 60 km, P = 40 dBm\n");
    std::printf("  ZF   %8.3f bit/s/Hz  (lambda_min %.3e%s)\n", zf.sum_rate, zf.min_eigenvalue,
                zf.collapsed ? ", collapsed" : "");
    std::printf("  STAB %8.3f bit/s/Hz  (lambda_min %.3e)\n", st.sum_rate, st.min_eigenvalue);

    const CandidatePool pool{draw_users(u, 60.0, 600.0, Placement::Square, rng), array, l};
    const auto sds = schedule(pool, Scheme::StabSds, k, 0.7);
    const auto sus = schedule(pool, Scheme::ZfSus, k, 0.5);
    std::printf("scheduled from %zu candidates\n", u);
    std::printf("  STAB+SDS %8.3f bit/s/Hz  (%zu users)\n", scheduled_rate(pool, Scheme::StabSds, sds, rho).sum_rate,
                sds.size());
    std::printf("  ZF+SUS   %8.3f bit/s/Hz  (%zu users)\n", scheduled_rate(pool, Scheme::ZfSus, sus, rho).sum_rate,
                sus.size());
    return 0;
}
