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

#ifndef QCORR_ORACLE_HPP
#define QCORR_ORACLE_HPP

// Brute-force optimizers and a matrices-only recomputation of every measure.
// Nothing in here uses the closed forms of correlations.hpp, so the two
// paths can be checked against each other.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "qcorr/errors.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/states.hpp"

namespace qcorr::oracle {

struct ScanResult {
    std::vector<std::pair<double, double>> grid;
    double arg_opt = 0.0;
    double value_opt = 0.0;
    int refinement_iterations = 0;
};

struct PhiScanOptions {
    std::size_t grid_points = 720;
    std::size_t basins = 3;
    double bracket_width = 1e-9;
};

namespace detail {

inline double checked(const std::function<double(double)>& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw NonFiniteObjectiveError("phi", x);
    return v;
}

struct GoldenResult {
    double x;
    double fx;
    int iterations;
};

/// Golden-section minimization on [a, b] until the bracket is narrower than width.
inline GoldenResult golden_section(const std::function<double(double)>& f, double a, double b, double width) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = checked(f, c), fd = checked(f, d);
    int it = 0;
    while (b - a > width && it < 500) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = checked(f, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = checked(f, d);
        }
        ++it;
    }
    const double x = 0.5 * (a + b);
    return {x, checked(f, x), it};
}

/// Near a flat optimum the objective stops resolving the argument long before
/// the bracket does. A sign change of the five-point slope still does.
inline double polish_stationary(const std::function<double(double)>& f, double a, double b, double h = 1e-3) {
    const auto slope = [&](double x) {
        return 8.0 * (checked(f, x + h) - checked(f, x - h)) - (checked(f, x + 2.0 * h) - checked(f, x - 2.0 * h));
    };
    double sa = slope(a);
    const double sb = slope(b);
    if (!(sa < 0.0 && sb > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        const double m = 0.5 * (a + b);
        const double sm = slope(m);
        if (sm < 0.0) {
            a = m;
            sa = sm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace detail

/// Global minimum of a function of a measurement angle on (-pi, pi]: a
/// uniform grid, then golden-section refinement of the best few grid basins.
inline ScanResult minimize_over_phi(const std::function<double(double)>& f, const PhiScanOptions& opt = {}) {
    constexpr double pi = std::numbers::pi;
    const std::size_t n = std::max<std::size_t>(opt.grid_points, 3);
    const double step = 2.0 * pi / static_cast<double>(n);

    ScanResult res;
    res.grid.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -pi + static_cast<double>(i + 1) * step;
        res.grid.emplace_back(x, detail::checked(f, x));
    }

    // Cyclic local minima of the grid.
    std::vector<std::size_t> minima;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = res.grid[i].second;
        if (v <= res.grid[(i + n - 1) % n].second && v <= res.grid[(i + 1) % n].second) minima.push_back(i);
    }
    std::stable_sort(minima.begin(), minima.end(),
                     [&](std::size_t a, std::size_t b) { return res.grid[a].second < res.grid[b].second; });
    if (minima.size() > opt.basins) minima.resize(opt.basins);

    res.arg_opt = res.grid[minima.front()].first;
    res.value_opt = res.grid[minima.front()].second;
    for (const std::size_t i : minima) {
        const double centre = res.grid[i].first;
        const auto g = detail::golden_section(f, centre - step, centre + step, opt.bracket_width);
        res.refinement_iterations += g.iterations;
        if (g.fx < res.value_opt) {
            res.value_opt = g.fx;
            const double x = detail::polish_stationary(f, g.x - step, g.x + step);
            res.arg_opt = normalize_angle(std::isnan(x) ? g.x : x);
        }
    }
    return res;
}

struct SphereScanResult {
    BlochVector arg_opt;
    double value_opt = 0.0;
    std::size_t directions = 0;
    int refinement_iterations = 0;
};

/// Quasi-uniform Fibonacci lattice of unit vectors.
inline std::vector<BlochVector> sphere_directions(std::size_t count) {
    std::vector<BlochVector> dirs;
    dirs.reserve(count);
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < count; ++i) {
        const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double az = golden_angle * static_cast<double>(i);
        dirs.push_back({rho * std::cos(az), rho * std::sin(az), z});
    }
    return dirs;
}

/// Global minimum over unit directions: lattice scan, then a compass search
/// in the tangent plane of the best few lattice points.
inline SphereScanResult scan_bloch_sphere(const std::function<double(const BlochVector&)>& f,
                                          std::size_t resolution = 20000, std::size_t basins = 3) {
    const auto eval = [&](const BlochVector& k) {
        const double v = f(k);
        if (!std::isfinite(v)) throw NonFiniteObjectiveError("direction z", k.z);
        return v;
    };
    const auto dirs = sphere_directions(std::max<std::size_t>(resolution, 4));
    std::vector<std::pair<double, std::size_t>> vals;
    vals.reserve(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) vals.emplace_back(eval(dirs[i]), i);
    std::stable_sort(vals.begin(), vals.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    SphereScanResult res;
    res.directions = dirs.size();
    res.arg_opt = dirs[vals.front().second];
    res.value_opt = vals.front().first;

    const double spacing = std::sqrt(4.0 * std::numbers::pi / static_cast<double>(dirs.size()));
    for (std::size_t b = 0; b < std::min(basins, vals.size()); ++b) {
        BlochVector k = dirs[vals[b].second];
        double fk = vals[b].first;
        double h = spacing;
        while (h > 1e-10 && res.refinement_iterations < 200000) {
            // Tangent basis at k.
            const std::array<double, 3> ka{k.x, k.y, k.z};
            const auto u = qcorr::detail::any_perpendicular(ka);
            const auto v = qcorr::detail::cross(ka, u);
            bool moved = false;
            for (const auto& dir : {u, v}) {
                for (const double sgn : {1.0, -1.0}) {
                    BlochVector t{k.x + sgn * h * dir[0], k.y + sgn * h * dir[1], k.z + sgn * h * dir[2]};
                    t = t.scaled(1.0 / t.norm());
                    const double ft = eval(t);
                    ++res.refinement_iterations;
                    if (ft < fk) {
                        k = t;
                        fk = ft;
                        moved = true;
                    }
                }
            }
            if (!moved) h *= 0.5;
        }
        if (fk < res.value_opt) {
            res.value_opt = fk;
            res.arg_opt = k;
        }
    }
    return res;
}

/// Von Neumann entropy (bits) from the full spectrum.
template <std::size_t N>
double vn_entropy(const Matrix<N>& m) {
    double s = 0.0;
    for (double lam : eigenvalues_hermitian(m))
        if (lam > 0.0) s -= lam * std::log2(lam);
    return s;
}

template <std::size_t N>
double tr_square(const Matrix<N>& m) {
    return (m * m).trace().real();
}

/// |+-theta> built directly from amplitudes, independent of states.hpp.
inline Mat4 dense_theta_state(double theta, double p) {
    const std::array<cplx, 2> up{std::cos(theta / 2), std::sin(theta / 2)};
    const std::array<cplx, 2> dn{std::cos(theta / 2), -std::sin(theta / 2)};
    return p * Mat4::outer(kron(up, up), kron(up, up)) + (1.0 - p) * Mat4::outer(kron(dn, dn), kron(dn, dn));
}

/// Every measure at one (theta, p, phi), computed only from matrices.
struct DenseRecord {
    double r_plus = 0.0, r_minus = 0.0;
    double p_prime_plus = std::numeric_limits<double>::quiet_NaN();
    double p_prime_minus = std::numeric_limits<double>::quiet_NaN();
    double purity_cond_plus = std::numeric_limits<double>::quiet_NaN();
    double purity_cond_minus = std::numeric_limits<double>::quiet_NaN();
    double purity_avg = 0.0;
    double purity_ab = 0.0, purity_a = 0.0;
    double entropy_measured = 0.0;  ///< S(A/B_phi)
    double entropy_cond = 0.0;      ///< S(AB) - S(B)
    double discord_phi = 0.0;
    double purity_post = 0.0;       ///< Tr rho'^2
    double info_deficit = 0.0;
    double s2_conditional = 0.0;
};

/// Dense measurement of B along k: probabilities, conditional A states, post-measurement state.
struct DenseMeasurement {
    std::array<double, 2> r{};
    std::array<Mat2, 2> cond{};
    std::array<bool, 2> valid{};
    Mat4 post;
};

inline DenseMeasurement dense_measure(const Mat4& rho, const BlochVector& k) {
    DenseMeasurement out;
    const Mat2 ks = k.x * pauli::x() + k.y * pauli::y() + k.z * pauli::z();
    for (int s = 0; s < 2; ++s) {
        const Mat2 proj = 0.5 * (Mat2::identity() + (s == 0 ? 1.0 : -1.0) * ks);
        const Mat4 op = kron(Mat2::identity(), proj);
        const Mat4 post = op * rho * op;
        out.post += post;
        out.r[s] = post.trace().real();
        out.valid[s] = out.r[s] > 1e-12;
        if (out.valid[s]) out.cond[s] = trace_out_b(post) * (1.0 / out.r[s]);
    }
    return out;
}

inline DenseRecord dense_recompute(double theta, double p, double phi) {
    const Mat4 rho = dense_theta_state(theta, p);
    const BlochVector k{std::sin(phi), 0.0, std::cos(phi)};
    const auto m = dense_measure(rho, k);
    DenseRecord d;
    d.r_plus = m.r[0];
    d.r_minus = m.r[1];
    d.purity_ab = tr_square(rho);
    const Mat2 rho_a = trace_out_b(rho);
    d.purity_a = tr_square(rho_a);
    const double sn = std::sin(theta);
    for (int s = 0; s < 2; ++s) {
        if (!m.valid[s]) continue;
        const double pc = tr_square(m.cond[s]);
        (s == 0 ? d.purity_cond_plus : d.purity_cond_minus) = pc;
        d.purity_avg += m.r[s] * pc;
        d.entropy_measured += m.r[s] * vn_entropy(m.cond[s]);
        // x Bloch component of p'|theta><theta| + q'|-theta><-theta| is (2p' - 1) sin theta.
        if (std::abs(sn) > 1e-9)
            (s == 0 ? d.p_prime_plus : d.p_prime_minus) = 0.5 * (1.0 + 2.0 * m.cond[s](0, 1).real() / sn);
    }
    d.entropy_cond = vn_entropy(rho) - vn_entropy(trace_out_a(rho));
    d.discord_phi = d.entropy_measured - d.entropy_cond;
    d.purity_post = tr_square(m.post);
    d.info_deficit = 2.0 * (d.purity_ab - d.purity_post);
    d.s2_conditional = 2.0 * (1.0 - d.purity_avg);
    return d;
}

inline double dense_avg_conditional_purity(const Mat4& rho, const BlochVector& k) {
    const auto m = dense_measure(rho, k);
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
        if (m.valid[i]) s += m.r[i] * tr_square(m.cond[i]);
    return s;
}

inline double dense_global_post_purity(const Mat4& rho, const BlochVector& k) {
    return tr_square(dense_measure(rho, k).post);
}

inline double dense_discord_phi(const Mat4& rho, const BlochVector& k) {
    const auto m = dense_measure(rho, k);
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
        if (m.valid[i]) s += m.r[i] * vn_entropy(m.cond[i]);
    return s - (vn_entropy(rho) - vn_entropy(trace_out_a(rho)));
}

/// Brute-force discord: minimum of the dense D(A/B_phi) over xz-plane angles.
inline ScanResult bruteforce_discord(const Mat4& rho, const PhiScanOptions& opt = {}) {
    return minimize_over_phi(
        [&](double phi) { return dense_discord_phi(rho, {std::sin(phi), 0.0, std::cos(phi)}); }, opt);
}

/// J_{mu nu} = <s_mu (x) s_nu> and local Bloch vectors by direct traces.
struct DenseTensor {
    std::array<std::array<double, 3>, 3> j{};
    std::array<std::array<double, 3>, 3> c{};
    BlochVector r_a, r_b;
};

inline DenseTensor dense_correlation_tensor(const Mat4& rho) {
    DenseTensor t;
    std::array<double, 3> ra{}, rb{};
    for (std::size_t mu = 0; mu < 3; ++mu) {
        ra[mu] = (rho * kron(pauli::axis(mu), Mat2::identity())).trace().real();
        rb[mu] = (rho * kron(Mat2::identity(), pauli::axis(mu))).trace().real();
    }
    t.r_a = {ra[0], ra[1], ra[2]};
    t.r_b = {rb[0], rb[1], rb[2]};
    for (std::size_t mu = 0; mu < 3; ++mu)
        for (std::size_t nu = 0; nu < 3; ++nu) {
            t.j[mu][nu] = (rho * kron(pauli::axis(mu), pauli::axis(nu))).trace().real();
            t.c[mu][nu] = t.j[mu][nu] - ra[mu] * rb[nu];
        }
    return t;
}

}  // namespace qcorr::oracle

#endif  // QCORR_ORACLE_HPP
