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

#ifndef QCORR_CORRELATIONS_HPP
#define QCORR_CORRELATIONS_HPP

// Closed-form correlation measures of the (theta, p) family under a
// projective measurement of qubit B. Entropies are in bits.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "qcorr/linalg.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

/// theta_c = arccos(1/sqrt 3): for p = 1/2 the deficit-optimal angle jumps 0 -> pi/2 here.
inline const double kThetaCritical = std::acos(1.0 / std::sqrt(3.0));

/// Maps an angle onto [0, pi); phi and phi + pi describe the same measurement.
inline double fold_half_turn(double phi) {
    double r = std::fmod(phi, std::numbers::pi);
    if (r < 0.0) r += std::numbers::pi;
    if (r >= std::numbers::pi) r -= std::numbers::pi;
    return r;
}

/// Distance between two measurement angles modulo pi.
inline double angle_distance_mod_pi(double a, double b) {
    const double d = fold_half_turn(a - b);
    return std::min(d, std::numbers::pi - d);
}

struct OptimalAngle {
    double phi = 0.0;
    bool degenerate = false;  ///< every phi (or a continuum) is optimal
};

/// gamma = [p sin^2(theta - phi) + q sin^2(theta + phi)] / (1 - m^2),
/// m = p cos(theta - phi) + q cos(theta + phi). The 0/0 limit at theta = 0 is 1.
inline double gamma_factor(const ThetaPState& s, double phi) {
    const double th = s.theta();
    const double m = s.p() * std::cos(th - phi) + s.q() * std::cos(th + phi);
    const double sm = std::sin(th - phi), sp = std::sin(th + phi);
    const double den = 1.0 - m * m;
    if (den <= 0.0) return 1.0;
    return (s.p() * sm * sm + s.q() * sp * sp) / den;
}

/// r+ P+ + r- P- = 1 - 2 pq gamma sin^2 theta.
inline double avg_conditional_purity(const ThetaPState& s, double phi) {
    const double sn = std::sin(s.theta());
    return 1.0 - 2.0 * s.p() * s.q() * gamma_factor(s, phi) * sn * sn;
}

/// Measurement-dependent linear conditional entropy, 2(1 - P_{A/B_phi}).
inline double s2_conditional_entropy(const ThetaPState& s, double phi) {
    const double sn = std::sin(s.theta());
    return 4.0 * s.p() * s.q() * gamma_factor(s, phi) * sn * sn;
}

/// Maximizer of avg_conditional_purity: tan phi = tan theta / (p - q), phi in [0, pi].
inline OptimalAngle optimal_phi_conditional(const ThetaPState& s) {
    const double sn = std::sin(s.theta());
    if (std::abs(sn) < 1e-12) return {0.0, true};
    const double phi = std::atan2(sn, (s.p() - s.q()) * std::cos(s.theta()));
    return {phi, s.p() * s.q() <= 0.0};
}

/// P_{A/B} = 1 - 2 pq sin^2 theta cos^2 theta.
inline double max_avg_conditional_purity(const ThetaPState& s) {
    const double sc = std::sin(s.theta()) * std::cos(s.theta());
    return 1.0 - 2.0 * s.p() * s.q() * sc * sc;
}

/// Concurrence between A and a purifying qubit C: sqrt(pq) |sin 2 theta|.
inline double concurrence_ac(const ThetaPState& s) {
    return std::sqrt(s.p() * s.q()) * std::abs(std::sin(2.0 * s.theta()));
}

/// S(A/B) = S(rho_AB) - S(rho_B).
inline double conditional_entropy_vn(const ThetaPState& s) {
    return entropy_from_purity(purity_ab(s)) - entropy_from_purity(local_purity(s));
}

/// r+ S(rho_{A/B+}) + r- S(rho_{A/B-}), evaluated from the conditional purities.
inline double measured_conditional_entropy(const ThetaPState& s, double phi) {
    const auto [rp, rm] = outcome_probabilities(s, phi);
    double total = 0.0;
    if (rp > tol::kZeroProbability) total += rp * entropy_from_purity(conditional_purity(s, phi, Outcome::plus));
    if (rm > tol::kZeroProbability) total += rm * entropy_from_purity(conditional_purity(s, phi, Outcome::minus));
    return total;
}

/// D(A/B_phi) = S(A/B_phi) - S(A/B).
inline double discord_phi(const ThetaPState& s, double phi) {
    return measured_conditional_entropy(s, phi) - conditional_entropy_vn(s);
}

struct DiscordResult {
    double value = 0.0;
    double phi_min = 0.0;
    bool degenerate = false;
};

/// D(A/B) = H(f+) - S(A/B), f+- = (1 +- sqrt(2 P_{A/B} - 1)) / 2. The
/// minimizing angle is exactly the one maximizing the average conditional purity.
inline DiscordResult discord(const ThetaPState& s) {
    const auto opt = optimal_phi_conditional(s);
    const double value = entropy_from_purity(max_avg_conditional_purity(s)) - conditional_entropy_vn(s);
    return {std::max(0.0, value), opt.phi, opt.degenerate};
}

/// r+ rho_{A/B+} (x) Pi+ + r- rho_{A/B-} (x) Pi-.
inline Density4 post_measurement_global_state(const ThetaPState& s, double phi) {
    const auto pr = projectors(MeasurementSetting::xz(phi));
    Mat4 m;
    for (const Outcome o : {Outcome::plus, Outcome::minus}) {
        const double r = outcome_probability(s, phi, o);
        if (r <= tol::kZeroProbability) continue;
        const auto c = conditional_state(s, phi, o);
        m += r * kron(c.state.matrix(), pick(pr, o));
    }
    m = 0.5 * (m + m.adjoint());
    return Density4(m);
}

/// P'_AB = r+^2 P_{A/B+} + r-^2 P_{A/B-}.
inline double global_post_purity(const ThetaPState& s, double phi) {
    double total = 0.0;
    for (const Outcome o : {Outcome::plus, Outcome::minus}) {
        const double r = outcome_probability(s, phi, o);
        if (r <= tol::kZeroProbability) continue;
        total += r * r * conditional_purity(s, phi, o);
    }
    return total;
}

/// Same quantity in closed form:
/// [1 + m^2] / 2 - pq sin^2 theta (1 + cos(theta + phi) cos(theta - phi)).
inline double global_post_purity_closed_form(const ThetaPState& s, double phi) {
    const double th = s.theta();
    const double m = s.p() * std::cos(th - phi) + s.q() * std::cos(th + phi);
    const double sn = std::sin(th);
    return 0.5 * (1.0 + m * m) - s.p() * s.q() * sn * sn * (1.0 + std::cos(th + phi) * std::cos(th - phi));
}

/// I2(A, B_phi) = 2 (P_AB - P'_AB).
inline double info_deficit_phi(const ThetaPState& s, double phi) {
    return 2.0 * (purity_ab(s) - global_post_purity(s, phi));
}

/// -log2(P'_AB / P_AB).
inline double renyi_deficit_phi(const ThetaPState& s, double phi) {
    return -std::log2(global_post_purity(s, phi) / purity_ab(s));
}

/// Maximizer of P'_AB: tan 2phi = (p - q) sin 2theta / (pq + (1 - pq) cos 2theta).
/// P'_AB is a pure second harmonic in phi, so atan2 of (numerator, denominator)
/// is the maximizing 2phi itself; folded, phi lies in [0, pi).
inline OptimalAngle optimal_phi_deficit(const ThetaPState& s) {
    const double pq = s.p() * s.q();
    const double num = (s.p() - s.q()) * std::sin(2.0 * s.theta());
    const double den = pq + (1.0 - pq) * std::cos(2.0 * s.theta());
    if (std::abs(num) < 1e-14 && std::abs(den) < 1e-14) return {0.0, true};
    const double two_phi = std::atan2(num, den);
    const double folded = two_phi < 0.0 ? two_phi + 2.0 * std::numbers::pi : two_phi;
    return {fold_half_turn(0.5 * folded), false};
}

/// Minimum I2 over phi (proportional to the geometric discord).
inline double geometric_deficit(const ThetaPState& s) {
    return std::max(0.0, info_deficit_phi(s, optimal_phi_deficit(s).phi));
}

inline double renyi_deficit_min(const ThetaPState& s) {
    return std::max(0.0, renyi_deficit_phi(s, optimal_phi_deficit(s).phi));
}

using RealMat3 = std::array<std::array<double, 3>, 3>;

struct CorrelationTensor {
    RealMat3 c{};  ///< <s_mu (x) s_nu> - <s_mu><s_nu>
    RealMat3 j{};  ///< <s_mu (x) s_nu>
    BlochVector r_a;
    BlochVector r_b;
    RealMat3 n_b{};  ///< I - r_B r_B^T
};

inline RealMat3 outer3(const BlochVector& a, const BlochVector& b) {
    RealMat3 m{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k) m[i][k] = a[i] * b[k];
    return m;
}

/// Only C_xx = 4pq sin^2 theta is non-zero; r_A = r_B = ((p - q) sin theta, 0, cos theta).
inline CorrelationTensor correlation_tensor(const ThetaPState& s) {
    CorrelationTensor t;
    t.r_a = local_bloch(s);
    t.r_b = local_bloch(s);
    const double sn = std::sin(s.theta());
    t.c[0][0] = 4.0 * s.p() * s.q() * sn * sn;
    const RealMat3 rr = outer3(t.r_a, t.r_b);
    const RealMat3 bb = outer3(t.r_b, t.r_b);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k) {
            t.j[i][k] = t.c[i][k] + rr[i][k];
            t.n_b[i][k] = (i == k ? 1.0 : 0.0) - bb[i][k];
        }
    return t;
}

enum class DirectionKind { conditional, deficit };

struct EigenDirection {
    BlochVector k;
    double lambda = 0.0;
    double phi = 0.0;  ///< atan2(k_x, k_z) folded into [0, pi)
    bool degenerate = false;
};

namespace detail {

inline Matrix<3> to_complex(const RealMat3& m) {
    Matrix<3> r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k) r(i, k) = m[i][k];
    return r;
}

inline RealMat3 matmul(const RealMat3& a, const RealMat3& b) {
    RealMat3 r{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t l = 0; l < 3; ++l) r[i][k] += a[i][l] * b[l][k];
    return r;
}

inline RealMat3 transpose(const RealMat3& a) {
    RealMat3 r{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k) r[i][k] = a[k][i];
    return r;
}

inline EigenDirection top_direction(const RealMat3& m, const RealMat3* back_transform) {
    const auto es = eigh(to_complex(m));
    // Eigenvectors of a real symmetric matrix are real up to a global phase;
    // strip it using the largest component.
    std::size_t big = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(es.vectors(i, 0)) > std::abs(es.vectors(big, 0))) big = i;
    const cplx phase = std::conj(es.vectors(big, 0)) / std::abs(es.vectors(big, 0));
    std::array<double, 3> v{};
    for (std::size_t i = 0; i < 3; ++i) v[i] = (es.vectors(i, 0) * phase).real();
    if (back_transform != nullptr) {
        std::array<double, 3> w{};
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t k = 0; k < 3; ++k) w[i] += (*back_transform)[i][k] * v[k];
        v = w;
    }
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    EigenDirection d;
    d.k = {v[0] / n, v[1] / n, v[2] / n};
    d.lambda = es.values[0];
    d.phi = fold_half_turn(std::atan2(d.k.x, d.k.z));
    d.degenerate = es.values[0] - es.values[1] < 1e-12;
    return d;
}

}  // namespace detail

/// Measurement direction from the eigenvalue problems
///   conditional: C^T C k = lambda N_B k   (largest lambda)
///   deficit:     (J^T J + r_B r_B^T) k = lambda k.
inline EigenDirection optimal_direction_eigen(const CorrelationTensor& t, DirectionKind kind) {
    using detail::matmul;
    using detail::transpose;
    if (kind == DirectionKind::deficit) {
        RealMat3 m = matmul(transpose(t.j), t.j);
        const RealMat3 bb = outer3(t.r_b, t.r_b);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t k = 0; k < 3; ++k) m[i][k] += bb[i][k];
        return detail::top_direction(m, nullptr);
    }
    // Symmetric-definite reduction with N_B^{-1/2} = I + (1/sqrt(1 - |r|^2) - 1) r^ r^T.
    const double r2 = t.r_b.dot(t.r_b);
    if (1.0 - r2 < 1e-14) {
        EigenDirection d;
        d.k = {0.0, 0.0, 1.0};
        d.degenerate = true;
        return d;
    }
    RealMat3 inv_sqrt{};
    const double scale = r2 > 0.0 ? (1.0 / std::sqrt(1.0 - r2) - 1.0) / r2 : 0.0;
    const RealMat3 bb = outer3(t.r_b, t.r_b);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k) inv_sqrt[i][k] = (i == k ? 1.0 : 0.0) + scale * bb[i][k];
    const RealMat3 ctc = matmul(transpose(t.c), t.c);
    const RealMat3 m = matmul(matmul(inv_sqrt, ctc), inv_sqrt);
    auto d = detail::top_direction(m, &inv_sqrt);
    if (d.lambda < 1e-14) d.degenerate = true;
    return d;
}

inline EigenDirection optimal_direction_eigen(const ThetaPState& s, DirectionKind kind) {
    return optimal_direction_eigen(correlation_tensor(s), kind);
}

struct CorrelationReport {
    double theta = 0.0;
    double p = 0.0;
    double purity_ab = 0.0;
    double purity_b = 0.0;
    double purity_cond_max = 0.0;
    double phi_star_cond = 0.0;
    double discord = 0.0;
    double entropy_ab = 0.0;
    double entropy_b = 0.0;
    double entropy_cond = 0.0;
    double concurrence_ac = 0.0;
    double i2_min = 0.0;
    double phi_star_deficit = 0.0;
    double i2_renyi_min = 0.0;
    bool theta_c_flag = false;      ///< theta > arccos(1/sqrt 3)
    bool beyond_half_pi = false;    ///< theta in (pi/2, pi]
    bool cond_degenerate = false;
    bool deficit_degenerate = false;
};

inline CorrelationReport make_report(const ThetaPState& s) {
    CorrelationReport r;
    r.theta = s.theta();
    r.p = s.p();
    r.purity_ab = purity_ab(s);
    r.purity_b = local_purity(s);
    r.purity_cond_max = max_avg_conditional_purity(s);
    const auto dc = discord(s);
    r.phi_star_cond = dc.phi_min;
    r.cond_degenerate = dc.degenerate;
    r.discord = dc.value;
    r.entropy_ab = entropy_from_purity(r.purity_ab);
    r.entropy_b = entropy_from_purity(r.purity_b);
    r.entropy_cond = r.entropy_ab - r.entropy_b;
    r.concurrence_ac = concurrence_ac(s);
    const auto od = optimal_phi_deficit(s);
    r.phi_star_deficit = od.phi;
    r.deficit_degenerate = od.degenerate;
    r.i2_min = std::max(0.0, info_deficit_phi(s, od.phi));
    r.i2_renyi_min = std::max(0.0, renyi_deficit_phi(s, od.phi));
    r.theta_c_flag = s.theta() > kThetaCritical;
    r.beyond_half_pi = s.beyond_half_pi();
    return r;
}

}  // namespace qcorr

#endif  // QCORR_CORRELATIONS_HPP
