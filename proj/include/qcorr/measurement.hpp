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

#ifndef QCORR_MEASUREMENT_HPP
#define QCORR_MEASUREMENT_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcorr/errors.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {

enum class Outcome { plus, minus };

inline int sign_of(Outcome o) { return o == Outcome::plus ? 1 : -1; }
inline const char* to_string(Outcome o) { return o == Outcome::plus ? "+" : "-"; }

/// Maps an angle into (-pi, pi].
inline double normalize_angle(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(phi, two_pi);
    if (r <= -std::numbers::pi) r += two_pi;
    if (r > std::numbers::pi) r -= two_pi;
    return r;
}

/// Projective measurement on one qubit, along k on the Bloch sphere.
/// The xz-plane angle phi corresponds to k = (sin phi, 0, cos phi).
class MeasurementSetting {
public:
    enum class Mode { xz_angle, bloch_direction };

    /// phi = 0, i.e. the {|V>, |H>} basis.
    MeasurementSetting() : MeasurementSetting(Mode::xz_angle, 0.0, {0.0, 0.0, 1.0}) {}

    static MeasurementSetting xz(double phi) {
        const double p = normalize_angle(phi);
        return MeasurementSetting(Mode::xz_angle, p, {std::sin(p), 0.0, std::cos(p)});
    }

    /// Throws InvalidDirectionError if |k| != 1.
    static MeasurementSetting direction(const BlochVector& k) {
        if (std::abs(k.norm() - 1.0) > tol::kUnitDirection)
            throw InvalidDirectionError("measurement direction must be a unit vector, |k| = " + std::to_string(k.norm()));
        return MeasurementSetting(Mode::bloch_direction, std::atan2(k.x, k.z), k);
    }

    Mode mode() const { return mode_; }
    /// xz-plane angle; for general directions the angle of the xz projection.
    double phi() const { return phi_; }
    const BlochVector& k() const { return k_; }

private:
    MeasurementSetting(Mode m, double phi, BlochVector k) : mode_(m), phi_(phi), k_(k) {}
    Mode mode_;
    double phi_;
    BlochVector k_;
};

/// (Pi+, Pi-) = ((I + k.sigma)/2, (I - k.sigma)/2).
inline std::pair<Mat2, Mat2> projectors(const MeasurementSetting& m) {
    const Mat2 ks = m.k().x * pauli::x() + m.k().y * pauli::y() + m.k().z * pauli::z();
    const Mat2 id = Mat2::identity();
    return {0.5 * (id + ks), 0.5 * (id - ks)};
}

inline const Mat2& pick(const std::pair<Mat2, Mat2>& pr, Outcome o) { return o == Outcome::plus ? pr.first : pr.second; }

/// r+- = [1 +- p cos(phi - theta) +- q cos(phi + theta)] / 2.
inline std::pair<double, double> outcome_probabilities(const ThetaPState& s, double phi) {
    const double m = s.p() * std::cos(phi - s.theta()) + s.q() * std::cos(phi + s.theta());
    return {0.5 * (1.0 + m), 0.5 * (1.0 - m)};
}

inline double outcome_probability(const ThetaPState& s, double phi, Outcome o) {
    const auto [rp, rm] = outcome_probabilities(s, phi);
    return o == Outcome::plus ? rp : rm;
}

/// Weight of |theta> in the conditional state: p (1 +- cos(theta - phi)) / (2 r+-).
inline double conditional_weight(const ThetaPState& s, double phi, Outcome o) {
    const double r = outcome_probability(s, phi, o);
    if (!(r > tol::kZeroProbability))
        throw ZeroProbabilityError(std::string("outcome ") + to_string(o) + " has zero probability");
    const double w = s.p() * (1.0 + sign_of(o) * std::cos(s.theta() - phi)) / (2.0 * r);
    return std::clamp(w, 0.0, 1.0);
}

struct ConditionalOutcome {
    Outcome outcome;
    double r;
    Density2 state;
    double p_prime;
    double purity;
};

/// State of A after outcome o at B: p'|theta><theta| + q'|-theta><-theta|.
inline ConditionalOutcome conditional_state(const ThetaPState& s, double phi, Outcome o) {
    const double pp = conditional_weight(s, phi, o);
    const double sn = std::sin(s.theta());
    const Mat2 m = pp * s.plus().projector() + (1.0 - pp) * s.minus().projector();
    return ConditionalOutcome{o, outcome_probability(s, phi, o), Density2(m), pp, 1.0 - 2.0 * pp * (1.0 - pp) * sn * sn};
}

/// P_{A/B+-} = 1 - 2 p' q' sin^2 theta.
inline double conditional_purity(const ThetaPState& s, double phi, Outcome o) {
    const double pp = conditional_weight(s, phi, o);
    const double sn = std::sin(s.theta());
    return 1.0 - 2.0 * pp * (1.0 - pp) * sn * sn;
}

/// Dense measurement of qubit B: probability and normalized A state per outcome.
struct DenseBranch {
    double r;
    std::optional<Density2> state;  ///< empty when r <= kZeroProbability
};

inline std::pair<DenseBranch, DenseBranch> measure_b(const Density4& rho, const MeasurementSetting& m) {
    const auto pr = projectors(m);
    const auto branch = [&](const Mat2& proj) {
        const Mat4 op = kron(Mat2::identity(), proj);
        const Mat4 post = op * rho.matrix() * op;
        const double r = post.trace().real();
        DenseBranch b{r, std::nullopt};
        if (r > tol::kZeroProbability) {
            Mat2 a = trace_out_b(post) * (1.0 / r);
            a = 0.5 * (a + a.adjoint());
            b.state.emplace(a);
        }
        return b;
    };
    return {branch(pr.first), branch(pr.second)};
}

struct PurifyingAngle {
    double phi;
    Outcome outcome;  ///< the outcome that leaves A pure
    double p_prime;   ///< 0 or 1
};

struct EquilibratingAngle {
    double phi;
    Outcome outcome;  ///< the outcome with p' = 1/2
};

struct SpecialAngles {
    std::vector<PurifyingAngle> purifying;
    std::vector<EquilibratingAngle> equilibrating;
    /// Stationary points of r+(phi); the first one is the maximum.
    std::vector<double> prob_extremum;
    /// theta = 0 (mod pi) or pq = 0: no equilibrating roots exist.
    bool degenerate = false;
};

namespace detail {
inline void push_unique(std::vector<EquilibratingAngle>& v, double phi, Outcome o) {
    for (const auto& e : v)
        if (std::abs(normalize_angle(e.phi - phi)) < 1e-12) return;
    v.push_back({phi, o});
}
}  // namespace detail

/// Purifying angles (+-theta, +-(pi - theta)), the roots of
/// tan phi = (p - q) sin theta / (cos theta +- 2 sqrt(pq)) where p' = 1/2,
/// and the extrema of r+ at tan phi = (p - q) tan theta. All in (-pi, pi].
inline SpecialAngles special_angles(const ThetaPState& s) {
    constexpr double pi = std::numbers::pi;
    SpecialAngles out;
    const double th = s.theta(), p = s.p(), q = s.q();

    out.purifying = {{normalize_angle(th), Outcome::minus, 0.0},
                     {normalize_angle(-th), Outcome::minus, 1.0},
                     {normalize_angle(pi - th), Outcome::plus, 1.0},
                     {normalize_angle(th - pi), Outcome::plus, 0.0}};

    const double rmax = std::atan2((p - q) * std::sin(th), std::cos(th));
    out.prob_extremum = {normalize_angle(rmax), normalize_angle(rmax + pi)};

    const double sn = std::sin(th);
    if (std::abs(sn) < 1e-12 || p * q <= 0.0) {
        out.degenerate = true;
        return out;
    }
    for (const double sgn : {1.0, -1.0}) {
        const double a = std::atan2((p - q) * sn, std::cos(th) + sgn * 2.0 * std::sqrt(p * q));
        for (const double root : {normalize_angle(a), normalize_angle(a + pi)}) {
            // Each root equilibrates exactly one of the two outcomes.
            const auto off = [&](Outcome o) {
                const double r = outcome_probability(s, root, o);
                return r > tol::kZeroProbability ? std::abs(conditional_weight(s, root, o) - 0.5) : 1.0;
            };
            detail::push_unique(out.equilibrating, root,
                                off(Outcome::minus) <= off(Outcome::plus) ? Outcome::minus : Outcome::plus);
        }
    }
    std::sort(out.equilibrating.begin(), out.equilibrating.end(),
              [](const EquilibratingAngle& x, const EquilibratingAngle& y) { return x.phi < y.phi; });
    return out;
}

}  // namespace qcorr

#endif  // QCORR_MEASUREMENT_HPP
