// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCORR_VERIFY_HPP
#define QCORR_VERIFY_HPP

// Closed form vs. oracle comparisons at a single (theta, p).

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qcorr/correlations.hpp"
#include "qcorr/oracle.hpp"

namespace qcorr {

struct VerifyDelta {
    std::string name;
    double delta = 0.0;
    double tolerance = 0.0;
    bool pass() const { return delta <= tolerance; }
};

struct VerifyReport {
    double theta = 0.0;
    double p = 0.0;
    std::vector<VerifyDelta> deltas;
    bool pass() const {
        return std::all_of(deltas.begin(), deltas.end(), [](const VerifyDelta& d) { return d.pass(); });
    }
};

inline constexpr double kValueTolerance = 1e-8;
inline constexpr double kAngleTolerance = 1e-6;

inline VerifyReport verify_point(const ThetaPState& s) {
    VerifyReport rep{s.theta(), s.p(), {}};
    const Mat4 rho = oracle::dense_theta_state(s.theta(), s.p());
    const auto dir = [](double phi) { return BlochVector{std::sin(phi), 0.0, std::cos(phi)}; };

    // Pointwise agreement of every measure on a coarse phi grid.
    double pointwise = 0.0;
    for (const double phi : {-2.5, -1.0, -0.3, 0.0, 0.4, 1.1, 2.0, 3.0}) {
        const auto d = oracle::dense_recompute(s.theta(), s.p(), phi);
        const auto [rp, rm] = outcome_probabilities(s, phi);
        pointwise = std::max({pointwise, std::abs(d.r_plus - rp), std::abs(d.r_minus - rm),
                              std::abs(d.purity_avg - avg_conditional_purity(s, phi)),
                              std::abs(d.discord_phi - discord_phi(s, phi)),
                              std::abs(d.purity_post - global_post_purity(s, phi)),
                              std::abs(d.info_deficit - info_deficit_phi(s, phi))});
    }
    rep.deltas.push_back({"pointwise_measures", pointwise, kValueTolerance});

    const auto disc = discord(s);
    const auto bf = oracle::bruteforce_discord(rho);
    rep.deltas.push_back({"discord_value", std::abs(disc.value - bf.value_opt), kValueTolerance});

    const auto pc = oracle::minimize_over_phi([&](double phi) { return -oracle::dense_avg_conditional_purity(rho, dir(phi)); });
    rep.deltas.push_back({"P_cond_max", std::abs(max_avg_conditional_purity(s) + pc.value_opt), kValueTolerance});

    const auto pg = oracle::minimize_over_phi([&](double phi) { return -oracle::dense_global_post_purity(rho, dir(phi)); });
    const double bf_i2 = 2.0 * (oracle::tr_square(rho) + pg.value_opt);
    rep.deltas.push_back({"I2_min", std::abs(geometric_deficit(s) - bf_i2), kValueTolerance});

    // Argmins only where the optimum is isolated.
    const auto spread = [](const oracle::ScanResult& r) {
        double lo = r.grid.front().second, hi = lo;
        for (const auto& [x, v] : r.grid) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        return hi - lo;
    };
    if (!disc.degenerate && spread(pc) > 1e-6)
        rep.deltas.push_back({"phi_star_cond", angle_distance_mod_pi(disc.phi_min, pc.arg_opt), kAngleTolerance});
    const auto od = optimal_phi_deficit(s);
    if (!od.degenerate && spread(pg) > 1e-6)
        rep.deltas.push_back({"phi_star_deficit", angle_distance_mod_pi(od.phi, pg.arg_opt), kAngleTolerance});

    const auto ec = optimal_direction_eigen(s, DirectionKind::conditional);
    if (!ec.degenerate && !disc.degenerate)
        rep.deltas.push_back({"eigen_conditional", angle_distance_mod_pi(ec.phi, disc.phi_min), kValueTolerance});
    const auto ed = optimal_direction_eigen(s, DirectionKind::deficit);
    if (!ed.degenerate && !od.degenerate)
        rep.deltas.push_back({"eigen_deficit", angle_distance_mod_pi(ed.phi, od.phi), kValueTolerance});
    return rep;
}

}  // namespace qcorr

#endif  // QCORR_VERIFY_HPP
