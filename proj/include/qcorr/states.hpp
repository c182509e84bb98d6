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

#ifndef QCORR_STATES_HPP
#define QCORR_STATES_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "qcorr/errors.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, with |0> = |V>, |1> = |H>.
struct PureQubit {
    double theta = 0.0;
    double phi_azimuth = 0.0;

    std::array<cplx, 2> ket() const {
        return {std::cos(0.5 * theta), std::polar(1.0, phi_azimuth) * std::sin(0.5 * theta)};
    }
    BlochVector bloch() const {
        return {std::sin(theta) * std::cos(phi_azimuth), std::sin(theta) * std::sin(phi_azimuth), std::cos(theta)};
    }
    Mat2 projector() const {
        const auto k = ket();
        return Mat2::outer(k, k);
    }
};

/// Weight p on |theta theta>, q = 1 - p on |-theta -theta>.
///
/// theta is accepted on [0, pi]. The closed forms below hold on the whole
/// range, but the usual analysis lives on [0, pi/2]; beyond_half_pi() lets
/// reports flag the mirrored region.
class ThetaPState {
public:
    ThetaPState(double theta, double p) : theta_(theta), p_(p) {
        if (!(theta >= 0.0 && theta <= std::numbers::pi + 1e-12))
            throw InvalidArgumentError("theta must lie in [0, pi], got " + std::to_string(theta));
        if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgumentError("p must lie in [0, 1], got " + std::to_string(p));
    }

    double theta() const { return theta_; }
    double p() const { return p_; }
    double q() const { return 1.0 - p_; }
    bool beyond_half_pi() const { return theta_ > 0.5 * std::numbers::pi; }

    PureQubit plus() const { return {theta_, 0.0}; }
    PureQubit minus() const { return {-theta_, 0.0}; }

private:
    double theta_;
    double p_;
};

enum class Subsystem { A, B };

inline Density4 make_theta_state(const ThetaPState& s) {
    const auto a = kron(s.plus().ket(), s.plus().ket());
    const auto b = kron(s.minus().ket(), s.minus().ket());
    return Density4(s.p() * Mat4::outer(a, a) + s.q() * Mat4::outer(b, b));
}

/// Tr rho_AB^2 = 1 - 2pq(1 - cos^4 theta).
inline double purity_ab(const ThetaPState& s) {
    const double c2 = std::cos(s.theta()) * std::cos(s.theta());
    return 1.0 - 2.0 * s.p() * s.q() * (1.0 - c2 * c2);
}

/// The two non-zero eigenvalues (lambda+, lambda-) of rho_AB.
inline std::pair<double, double> eigvals_ab(const ThetaPState& s) {
    const double top = rank2_top_eigenvalue(purity_ab(s));
    return {top, 1.0 - top};
}

/// Tr rho_A^2 = Tr rho_B^2 = 1 - 2pq sin^2 theta.
inline double local_purity(const ThetaPState& s) {
    const double sn = std::sin(s.theta());
    return 1.0 - 2.0 * s.p() * s.q() * sn * sn;
}

/// ((p - q) sin theta, 0, cos theta), shared by both qubits.
inline BlochVector local_bloch(const ThetaPState& s) {
    return {(s.p() - s.q()) * std::sin(s.theta()), 0.0, std::cos(s.theta())};
}

/// Closed-form single-qubit marginal.
inline Density2 local_state(const ThetaPState& s) { return bloch_to_density(local_bloch(s)); }

/// Reduced state of the kept subsystem.
inline Density2 reduce(const Density4& rho, Subsystem keep) {
    Mat2 r = keep == Subsystem::A ? trace_out_b(rho.matrix()) : trace_out_a(rho.matrix());
    r = 0.5 * (r + r.adjoint());
    return Density2(r);
}

/// rho_AB = p |w1 w2><w1 w2| + q |w1' w2'><w1' w2'| for arbitrary pure qubits.
inline Density4 product_mixture(const PureQubit& w1, const PureQubit& w2, const PureQubit& w1p, const PureQubit& w2p,
                                double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgumentError("p must lie in [0, 1]");
    const auto a = kron(w1.ket(), w2.ket());
    const auto b = kron(w1p.ket(), w2p.ket());
    return Density4(p * Mat4::outer(a, a) + (1.0 - p) * Mat4::outer(b, b));
}

using Rotation3 = std::array<std::array<double, 3>, 3>;

/// SU(2) element U with U (n.sigma) U^dagger = (R n).sigma, via the
/// quaternion of the proper rotation R.
inline Mat2 rotation_to_unitary(const Rotation3& r) {
    const double tr = r[0][0] + r[1][1] + r[2][2];
    double w, x, y, z;
    if (tr > 0.0) {
        const double s = 2.0 * std::sqrt(1.0 + tr);
        w = 0.25 * s;
        x = (r[2][1] - r[1][2]) / s;
        y = (r[0][2] - r[2][0]) / s;
        z = (r[1][0] - r[0][1]) / s;
    } else if (r[0][0] > r[1][1] && r[0][0] > r[2][2]) {
        const double s = 2.0 * std::sqrt(1.0 + r[0][0] - r[1][1] - r[2][2]);
        w = (r[2][1] - r[1][2]) / s;
        x = 0.25 * s;
        y = (r[0][1] + r[1][0]) / s;
        z = (r[0][2] + r[2][0]) / s;
    } else if (r[1][1] > r[2][2]) {
        const double s = 2.0 * std::sqrt(1.0 + r[1][1] - r[0][0] - r[2][2]);
        w = (r[0][2] - r[2][0]) / s;
        x = (r[0][1] + r[1][0]) / s;
        y = 0.25 * s;
        z = (r[1][2] + r[2][1]) / s;
    } else {
        const double s = 2.0 * std::sqrt(1.0 + r[2][2] - r[0][0] - r[1][1]);
        w = (r[1][0] - r[0][1]) / s;
        x = (r[0][2] + r[2][0]) / s;
        y = (r[1][2] + r[2][1]) / s;
        z = 0.25 * s;
    }
    // U = w I - i (x sx + y sy + z sz)
    Mat2 u;
    u(0, 0) = cplx(w, -z);
    u(0, 1) = cplx(-y, -x);
    u(1, 0) = cplx(y, -x);
    u(1, 1) = cplx(w, z);
    return u;
}

struct CanonicalForm {
    ThetaPState state;
    Mat2 rotation_a;  ///< applied to qubit A
    Mat2 rotation_b;  ///< applied to qubit B
};

namespace detail {

inline std::array<double, 3> as_array(const BlochVector& v) { return {v.x, v.y, v.z}; }

inline std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline std::array<double, 3> normalized(std::array<double, 3> v) {
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    for (auto& c : v) c /= n;
    return v;
}

/// Some unit vector orthogonal to v, chosen deterministically.
inline std::array<double, 3> any_perpendicular(const std::array<double, 3>& v) {
    const std::array<double, 3> helper =
        std::abs(v[0]) <= std::abs(v[1]) && std::abs(v[0]) <= std::abs(v[2]) ? std::array<double, 3>{1, 0, 0}
        : std::abs(v[1]) <= std::abs(v[2])                                  ? std::array<double, 3>{0, 1, 0}
                                                                            : std::array<double, 3>{0, 0, 1};
    return normalized(cross(v, helper));
}

/// Rotation taking a -> (sin t, 0, cos t) and b -> (-sin t, 0, cos t),
/// where 2t is the angle between the unit vectors a and b.
inline std::pair<Rotation3, double> canonical_frame(const BlochVector& av, const BlochVector& bv) {
    const auto a = as_array(av);
    const auto b = as_array(bv);
    const double cos2t = std::clamp(av.dot(bv), -1.0, 1.0);
    const double half = 0.5 * std::acos(cos2t);

    std::array<double, 3> sum{a[0] + b[0], a[1] + b[1], a[2] + b[2]};
    std::array<double, 3> diff{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
    const double ns = std::sqrt(sum[0] * sum[0] + sum[1] * sum[1] + sum[2] * sum[2]);
    const double nd = std::sqrt(diff[0] * diff[0] + diff[1] * diff[1] + diff[2] * diff[2]);

    std::array<double, 3> ez, ex;
    if (nd < 1e-12) {
        // Zero aperture: the common direction becomes +z.
        ez = normalized(a);
        ex = any_perpendicular(ez);
    } else if (ns < 1e-12) {
        // Antipodal pair: any axis orthogonal to a bisects it.
        ex = normalized(a);
        ez = any_perpendicular(ex);
    } else {
        ez = normalized(sum);
        ex = normalized(diff);
    }
    const auto ey = cross(ez, ex);
    return {Rotation3{ex, ey, ez}, half};
}

}  // namespace detail

/// Brings p|w1 w2><w1 w2| + q|w1' w2'><w1' w2'| to the (theta, p) form by
/// local rotations. Requires angle(w2, w2') == angle(w1, w1'); the new z
/// axis bisects each pair and the unprimed state gets the positive x side.
inline CanonicalForm canonicalize(const PureQubit& w1, const PureQubit& w2, const PureQubit& w1p,
                                  const PureQubit& w2p, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgumentError("p must lie in [0, 1]");
    const double angle_a = std::acos(std::clamp(w1.bloch().dot(w1p.bloch()), -1.0, 1.0));
    const double angle_b = std::acos(std::clamp(w2.bloch().dot(w2p.bloch()), -1.0, 1.0));
    if (std::abs(angle_a - angle_b) > tol::kAngleMatch)
        throw AngleMismatchError("pair angles differ: " + std::to_string(angle_a) + " vs " + std::to_string(angle_b));

    const auto [ra, theta] = detail::canonical_frame(w1.bloch(), w1p.bloch());
    const auto [rb, theta_b] = detail::canonical_frame(w2.bloch(), w2p.bloch());
    (void)theta_b;
    return CanonicalForm{ThetaPState(theta, p), rotation_to_unitary(ra), rotation_to_unitary(rb)};
}

/// (U_A x U_B) rho (U_A x U_B)^dagger.
inline Density4 apply_local(const Density4& rho, const Mat2& ua, const Mat2& ub) {
    const Mat4 u = kron(ua, ub);
    Mat4 r = u * rho.matrix() * u.adjoint();
    r = 0.5 * (r + r.adjoint());
    return Density4(r);
}

/// alpha |theta>^{(x)n} + beta |-theta>^{(x)n}, n >= 2.
struct GroundStateParams {
    cplx alpha;
    cplx beta;
    double theta = 0.0;
    int n = 2;
};

/// Exact normalized two-site reduced state of the uniform superposition,
/// cross terms weighted by the overlap cos^{n-2} theta of the traced sites.
inline Density4 gs_reduced_pair(const GroundStateParams& g) {
    if (g.n < 2) throw InvalidArgumentError("chain length must be >= 2");
    const double c = std::cos(g.theta);
    const double norm = std::norm(g.alpha) + std::norm(g.beta) + 2.0 * (g.alpha * std::conj(g.beta)).real() * std::pow(c, g.n);
    if (!(norm > 1e-14)) throw NotNormalizableError("ground state has zero norm");

    const PureQubit up{g.theta, 0.0}, down{-g.theta, 0.0};
    const auto a = kron(up.ket(), up.ket());
    const auto b = kron(down.ket(), down.ket());
    const cplx cross = g.alpha * std::conj(g.beta) * std::pow(c, g.n - 2);
    Mat4 m = std::norm(g.alpha) * Mat4::outer(a, a) + std::norm(g.beta) * Mat4::outer(b, b) + cross * Mat4::outer(a, b) +
             std::conj(cross) * Mat4::outer(b, a);
    m *= 1.0 / norm;
    return Density4(m);
}

}  // namespace qcorr

#endif  // QCORR_STATES_HPP
