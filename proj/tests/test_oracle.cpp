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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qcorr/correlations.hpp"
#include "qcorr/oracle.hpp"

using namespace qcorr;
using std::numbers::pi;

TEST(MinimizeOverPhi, DiscordAtEqualWeights) {
    const ThetaPState s(pi / 3, 0.5);
    const auto r = oracle::minimize_over_phi([&](double phi) { return discord_phi(s, phi); });
    EXPECT_LT(angle_distance_mod_pi(r.arg_opt, pi / 2), 1e-6);
    EXPECT_NEAR(r.value_opt, 0.1402860571, 1e-8);
    EXPECT_EQ(r.grid.size(), 720u);
    EXPECT_GT(r.refinement_iterations, 0);
}

TEST(MinimizeOverPhi, Constant) {
    const auto r = oracle::minimize_over_phi([](double) { return 2.5; });
    EXPECT_DOUBLE_EQ(r.value_opt, 2.5);
    EXPECT_GT(r.arg_opt, -pi);
    EXPECT_LE(r.arg_opt, pi);
}

TEST(MinimizeOverPhi, ConditionalPurityMaximizer) {
    const ThetaPState s(pi / 3, 0.7);
    const auto r = oracle::minimize_over_phi([&](double phi) { return -avg_conditional_purity(s, phi); });
    EXPECT_LT(angle_distance_mod_pi(r.arg_opt, std::atan(std::tan(pi / 3) / 0.4)), 1e-6);
}

TEST(MinimizeOverPhi, RecoversKnownMinimumAnywhere) {
    for (double x0 = -3.1; x0 < 3.1; x0 += 0.37) {
        const auto r = oracle::minimize_over_phi([&](double phi) { return 1.0 - std::cos(phi - x0) + 0.1 * std::cos(3 * (phi - x0)); });
        EXPECT_LT(std::abs(normalize_angle(r.arg_opt - x0)), 1e-7);
    }
}

TEST(MinimizeOverPhi, NonFiniteObjectiveThrows) {
    try {
        oracle::minimize_over_phi([](double phi) { return phi > 1.0 ? std::nan("") : phi; });
        FAIL() << "expected NonFiniteObjectiveError";
    } catch (const NonFiniteObjectiveError& e) {
        EXPECT_GT(e.location, 1.0);
    }
}

TEST(ScanBlochSphere, AvgConditionalPurityStaysInPlane) {
    const ThetaPState s(pi / 3, 0.5);
    const Mat4 rho = oracle::dense_theta_state(pi / 3, 0.5);
    const auto r = oracle::scan_bloch_sphere([&](const BlochVector& k) { return -oracle::dense_avg_conditional_purity(rho, k); });
    EXPECT_LT(std::abs(r.arg_opt.y), 1e-4);
    EXPECT_NEAR(-r.value_opt, max_avg_conditional_purity(s), 1e-6);
    EXPECT_GE(r.directions, 10000u);
}

TEST(ScanBlochSphere, RecoversPlusZ) {
    const auto r = oracle::scan_bloch_sphere([](const BlochVector& k) { return -k.z; }, 2000);
    EXPECT_NEAR(r.arg_opt.z, 1.0, 1e-9);
    EXPECT_NEAR(r.value_opt, -1.0, 1e-12);
}

TEST(ScanBlochSphere, GlobalPostPurityInPlane) {
    const ThetaPState s(pi / 3, 0.7);
    const Mat4 rho = oracle::dense_theta_state(pi / 3, 0.7);
    const auto r = oracle::scan_bloch_sphere([&](const BlochVector& k) { return -oracle::dense_global_post_purity(rho, k); });
    EXPECT_LT(std::abs(r.arg_opt.y), 1e-4);
    EXPECT_NEAR(-r.value_opt, global_post_purity(s, optimal_phi_deficit(s).phi), 1e-8);
}

TEST(DenseRecompute, Examples) {
    const auto d = oracle::dense_recompute(pi / 3, 0.5, pi / 2);
    EXPECT_NEAR(d.purity_cond_plus, 0.90625, 1e-12);
    EXPECT_NEAR(d.purity_cond_minus, 0.90625, 1e-12);
    EXPECT_NEAR(oracle::dense_recompute(pi / 2, 0.5, pi / 2).discord_phi, 0.0, 1e-12);
}

TEST(DenseRecompute, FullRecordMatchesClosedForms) {
    const ThetaPState s(pi / 3, 0.7);
    const double phi = 0.5;
    const auto d = oracle::dense_recompute(pi / 3, 0.7, phi);
    const auto [rp, rm] = outcome_probabilities(s, phi);
    EXPECT_NEAR(d.r_plus, rp, 1e-12);
    EXPECT_NEAR(d.r_minus, rm, 1e-12);
    EXPECT_NEAR(d.p_prime_plus, conditional_weight(s, phi, Outcome::plus), 1e-12);
    EXPECT_NEAR(d.p_prime_minus, conditional_weight(s, phi, Outcome::minus), 1e-12);
    EXPECT_NEAR(d.purity_cond_plus, conditional_purity(s, phi, Outcome::plus), 1e-12);
    EXPECT_NEAR(d.purity_cond_minus, conditional_purity(s, phi, Outcome::minus), 1e-12);
    EXPECT_NEAR(d.purity_avg, avg_conditional_purity(s, phi), 1e-12);
    EXPECT_NEAR(d.purity_ab, purity_ab(s), 1e-12);
    EXPECT_NEAR(d.purity_a, local_purity(s), 1e-12);
    EXPECT_NEAR(d.entropy_measured, measured_conditional_entropy(s, phi), 1e-12);
    EXPECT_NEAR(d.entropy_cond, conditional_entropy_vn(s), 1e-12);
    EXPECT_NEAR(d.discord_phi, discord_phi(s, phi), 1e-12);
    EXPECT_NEAR(d.purity_post, global_post_purity(s, phi), 1e-12);
    EXPECT_NEAR(d.info_deficit, info_deficit_phi(s, phi), 1e-12);
    EXPECT_NEAR(d.s2_conditional, s2_conditional_entropy(s, phi), 1e-12);
}

TEST(BruteforceDiscord, AgreesWithClosedFormOnCoarseGrid) {
    for (double th = 0.1; th < pi / 2; th += 0.2)
        for (double p = 0.5; p < 1.0; p += 0.15) {
            const auto bf = oracle::bruteforce_discord(oracle::dense_theta_state(th, p));
            EXPECT_NEAR(bf.value_opt, discord(ThetaPState(th, p)).value, 1e-9);
        }
}
