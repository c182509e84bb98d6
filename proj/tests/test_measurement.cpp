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

#include "qcorr/measurement.hpp"
#include "qcorr/oracle.hpp"

using namespace qcorr;
using std::numbers::pi;

namespace {

// Reference conditional state by partial trace of the 4x4 matrix.
Mat2 dense_conditional(const ThetaPState& s, double phi, Outcome o, double* r_out = nullptr) {
    const auto rho = make_theta_state(s);
    const auto pr = projectors(MeasurementSetting::xz(phi));
    const Mat4 proj = kron(Mat2::identity(), pick(pr, o));
    const Mat2 un = trace_out_b(proj * rho.matrix() * proj);
    const double r = un.trace().real();
    if (r_out) *r_out = r;
    return (1.0 / r) * un;
}

}  // namespace

TEST(Projectors, Examples) {
    const auto [p0, m0] = projectors(MeasurementSetting::xz(0.0));
    EXPECT_LT(max_abs_diff(p0, Mat2::diagonal({1.0, 0.0})), 1e-15);
    EXPECT_LT(max_abs_diff(m0, Mat2::diagonal({0.0, 1.0})), 1e-15);

    const auto [px, mx] = projectors(MeasurementSetting::xz(pi / 2));
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_LT(max_abs_diff(px, Mat2::outer({h, h}, {h, h})), 1e-15);
    EXPECT_LT(max_abs_diff(mx, Mat2::outer({h, -h}, {h, -h})), 1e-15);

    const auto [p3, m3] = projectors(MeasurementSetting::xz(pi / 3));
    EXPECT_NEAR(p3(0, 0).real(), std::pow(std::cos(pi / 6), 2), 1e-15);
    EXPECT_LT(max_abs_diff(p3 * p3, p3), 1e-15);
    EXPECT_LT(max_abs_diff(p3 + m3, Mat2::identity()), 1e-15);
    EXPECT_LT(max_abs_diff(p3 * m3, Mat2{}), 1e-15);
}

TEST(Projectors, DirectionMustBeUnit) {
    EXPECT_THROW(MeasurementSetting::direction({0.0, 0.0, 0.9}), InvalidDirectionError);
    EXPECT_NO_THROW(MeasurementSetting::direction({0.0, 0.6, 0.8}));
}

TEST(OutcomeProbabilities, Examples) {
    const ThetaPState s(pi / 3, 0.5);
    auto [a, b] = outcome_probabilities(s, 0.0);
    EXPECT_NEAR(a, 0.75, 1e-15);
    EXPECT_NEAR(b, 0.25, 1e-15);
    std::tie(a, b) = outcome_probabilities(s, pi / 3);
    EXPECT_NEAR(a, 0.625, 1e-15);
    EXPECT_NEAR(b, 0.375, 1e-15);
    EXPECT_NEAR(b, s.q() * std::pow(std::sin(pi / 3), 2), 1e-15);
    for (double phi = -3.0; phi < 3.0; phi += 0.37) {
        const auto [x, y] = outcome_probabilities(s, phi);
        const auto [u, v] = outcome_probabilities(s, phi + pi);
        EXPECT_NEAR(x, v, 1e-14);
        EXPECT_NEAR(y, u, 1e-14);
    }
}

TEST(OutcomeProbabilities, MatchTraceFormula) {
    for (double th = 0.0; th <= pi; th += pi / 12)
        for (double p = 0.0; p <= 1.0; p += 0.25)
            for (double phi = -pi; phi <= pi; phi += pi / 7) {
                const ThetaPState s(th, p);
                double r = 0.0;
                dense_conditional(s, phi, Outcome::plus, &r);
                EXPECT_NEAR(outcome_probability(s, phi, Outcome::plus), r, 1e-13);
            }
}

TEST(ConditionalState, MatchesPartialTrace) {
    for (double th = 0.1; th < pi; th += 0.3)
        for (double p = 0.0; p <= 1.0; p += 0.2)
            for (double phi = -3.0; phi < 3.1; phi += 0.45)
                for (const Outcome o : {Outcome::plus, Outcome::minus}) {
                    const ThetaPState s(th, p);
                    if (outcome_probability(s, phi, o) < 1e-6) continue;
                    const auto c = conditional_state(s, phi, o);
                    EXPECT_LT(max_abs_diff(c.state.matrix(), dense_conditional(s, phi, o)), 1e-10);
                    EXPECT_NEAR(c.purity, purity(c.state), 1e-12);
                }
}

TEST(ConditionalState, Examples) {
    // phi = 0: no information about which branch, A stays rho_A.
    for (const double p : {0.2, 0.5, 0.9}) {
        const ThetaPState s(1.1, p);
        for (const Outcome o : {Outcome::plus, Outcome::minus}) {
            const auto c = conditional_state(s, 0.0, o);
            EXPECT_NEAR(c.p_prime, p, 1e-14);
            EXPECT_LT(max_abs_diff(c.state.matrix(), local_state(s).matrix()), 1e-14);
        }
    }
    const ThetaPState s(pi / 3, 0.5);
    const auto c = conditional_state(s, pi / 3, Outcome::minus);
    EXPECT_NEAR(c.p_prime, 0.0, 1e-14);
    EXPECT_LT(max_abs_diff(c.state.matrix(), s.minus().projector()), 1e-14);
}

TEST(ConditionalState, EquilibratingRoot) {
    const double th = pi / 3;
    const ThetaPState s(th, 0.7);
    const double root = std::atan(0.4 * std::sin(th) / (std::cos(th) + 2.0 * std::sqrt(0.21)));
    EXPECT_NEAR(root, 0.2398436325, 1e-10);
    EXPECT_NEAR(conditional_weight(s, root, Outcome::minus), 0.5, 1e-9);
    // Purity of the dense conditional state at p' = 1/2 is 1 - sin^2(theta)/2.
    EXPECT_NEAR(purity(Density2(dense_conditional(s, root, Outcome::minus))), 0.625, 1e-9);
}

TEST(ConditionalState, ZeroProbabilityThrows) {
    const ThetaPState s(pi / 3, 1.0);
    // |theta> is orthogonal to the minus projector at phi = theta.
    EXPECT_THROW(conditional_state(s, pi / 3, Outcome::minus), ZeroProbabilityError);
    EXPECT_THROW(conditional_weight(s, pi / 3, Outcome::minus), ZeroProbabilityError);
}

TEST(ConditionalPurity, Examples) {
    const ThetaPState s(pi / 3, 0.5);
    EXPECT_NEAR(conditional_purity(s, pi / 3, Outcome::minus), 1.0, 1e-14);
    EXPECT_NEAR(conditional_purity(s, pi / 2, Outcome::plus), 0.90625, 1e-14);
    EXPECT_NEAR(conditional_purity(s, pi / 2, Outcome::minus), 0.90625, 1e-14);
}

TEST(ConditionalPurity, Bounds) {
    // 1 - sin^2(theta)/2 <= P_{A/B+-} <= 1.
    for (double th = 0.05; th < pi; th += 0.1)
        for (double p = 0.0; p <= 1.0; p += 0.1)
            for (double phi = -3.1; phi < 3.1; phi += 0.2)
                for (const Outcome o : {Outcome::plus, Outcome::minus}) {
                    const ThetaPState s(th, p);
                    if (outcome_probability(s, phi, o) < 1e-9) continue;
                    const double v = conditional_purity(s, phi, o);
                    EXPECT_LE(v, 1.0 + 1e-12);
                    EXPECT_GE(v, 1.0 - 0.5 * std::pow(std::sin(th), 2) - 1e-12);
                }
}

TEST(ConditionalState, ReconstructsMarginal) {
    // r+ rho_{A/B+} + r- rho_{A/B-} = rho_A for every measurement.
    for (double th = 0.1; th < pi; th += 0.4)
        for (double p = 0.1; p < 1.0; p += 0.2)
            for (double phi = -3.0; phi < 3.0; phi += 0.5) {
                const ThetaPState s(th, p);
                const auto a = conditional_state(s, phi, Outcome::plus);
                const auto b = conditional_state(s, phi, Outcome::minus);
                const Mat2 sum = a.r * a.state.matrix() + b.r * b.state.matrix();
                EXPECT_LT(max_abs_diff(sum, local_state(s).matrix()), 1e-12);
            }
}

TEST(MeasureB, DenseBranchesMatchClosedForm) {
    const ThetaPState s(0.9, 0.35);
    const auto [bp, bm] = measure_b(make_theta_state(s), MeasurementSetting::xz(0.6));
    ASSERT_TRUE(bp.state && bm.state);
    EXPECT_NEAR(bp.r, outcome_probability(s, 0.6, Outcome::plus), 1e-14);
    EXPECT_LT(max_abs_diff(bp.state->matrix(), conditional_state(s, 0.6, Outcome::plus).state.matrix()), 1e-12);
    EXPECT_LT(max_abs_diff(bm.state->matrix(), conditional_state(s, 0.6, Outcome::minus).state.matrix()), 1e-12);
    const auto [zp, zm] = measure_b(make_theta_state(ThetaPState(pi / 3, 1.0)), MeasurementSetting::xz(pi / 3));
    EXPECT_TRUE(zp.state.has_value());
    EXPECT_FALSE(zm.state.has_value());
}

TEST(SpecialAngles, DefiningConditions) {
    for (double th = 0.1; th < pi / 2; th += 0.15)
        for (double p = 0.15; p < 1.0; p += 0.2) {
            const ThetaPState s(th, p);
            const auto sa = special_angles(s);
            ASSERT_FALSE(sa.degenerate);
            for (const auto& pa : sa.purifying) {
                EXPECT_NEAR(conditional_purity(s, pa.phi, pa.outcome), 1.0, 1e-10);
                EXPECT_NEAR(conditional_weight(s, pa.phi, pa.outcome), pa.p_prime, 1e-10);
            }
            EXPECT_FALSE(sa.equilibrating.empty());
            for (const auto& ea : sa.equilibrating) {
                EXPECT_NEAR(conditional_weight(s, ea.phi, ea.outcome), 0.5, 1e-10);
                EXPECT_NEAR(conditional_purity(s, ea.phi, ea.outcome), 1.0 - 0.5 * std::pow(std::sin(th), 2), 1e-10);
            }
            // First extremum maximizes r+.
            const double rmax = outcome_probability(s, sa.prob_extremum[0], Outcome::plus);
            for (double phi = -pi; phi < pi; phi += 0.01) EXPECT_LE(outcome_probability(s, phi, Outcome::plus), rmax + 1e-14);
        }
}

TEST(SpecialAngles, DegenerateCases) {
    EXPECT_TRUE(special_angles(ThetaPState(0.0, 0.5)).degenerate);
    EXPECT_TRUE(special_angles(ThetaPState(0.0, 0.5)).equilibrating.empty());
    EXPECT_TRUE(special_angles(ThetaPState(1.0, 1.0)).degenerate);
}

TEST(NormalizeAngle, Range) {
    EXPECT_NEAR(normalize_angle(3 * pi), pi, 1e-14);
    EXPECT_NEAR(normalize_angle(-pi), pi, 1e-14);
    EXPECT_NEAR(normalize_angle(0.5 - 4 * pi), 0.5, 1e-13);
}
