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

#ifndef QCORR_LINALG_HPP
#define QCORR_LINALG_HPP

// Dense complex kernel for the 2x2 / 4x4 operators used throughout the
// library. Sizes are compile-time; nothing here allocates.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <utility>

#include "qcorr/errors.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {

using cplx = std::complex<double>;

/// Dense row-major N x N complex matrix.
template <std::size_t N>
class Matrix {
public:
    static constexpr std::size_t dim = N;

    constexpr Matrix() = default;

    static Matrix identity() {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix diagonal(const std::array<double, N>& d) {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    /// Outer product |u><v|.
    static Matrix outer(const std::array<cplx, N>& u, const std::array<cplx, N>& v) {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) m(i, j) = u[i] * std::conj(v[j]);
        return m;
    }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * N + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * N + j]; }

    const std::array<cplx, N * N>& entries() const { return a_; }

    Matrix adjoint() const {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) m(i, j) = std::conj((*this)(j, i));
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    /// Column k as a vector.
    std::array<cplx, N> column(std::size_t k) const {
        std::array<cplx, N> v{};
        for (std::size_t i = 0; i < N; ++i) v[i] = (*this)(i, k);
        return v;
    }

    Matrix& operator+=(const Matrix& o) {
        for (std::size_t k = 0; k < N * N; ++k) a_[k] += o.a_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (std::size_t k = 0; k < N * N; ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Matrix& operator*=(cplx s) {
        for (auto& x : a_) x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
    friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
    friend Matrix operator*(double s, Matrix a) { return a *= s; }
    friend Matrix operator*(Matrix a, double s) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) continue;
                for (std::size_t j = 0; j < N; ++j) m(i, j) += aik * b(k, j);
            }
        return m;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::array<cplx, N * N> a_{};
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;

template <std::size_t N>
std::array<cplx, N> operator*(const Matrix<N>& m, const std::array<cplx, N>& v) {
    std::array<cplx, N> r{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r[i] += m(i, j) * v[j];
    return r;
}

template <std::size_t N>
cplx inner(const std::array<cplx, N>& u, const std::array<cplx, N>& v) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += std::conj(u[i]) * v[i];
    return s;
}

/// Kronecker product; the left factor is the most significant index.
template <std::size_t N, std::size_t M>
Matrix<N * M> kron(const Matrix<N>& a, const Matrix<M>& b) {
    Matrix<N * M> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            for (std::size_t k = 0; k < M; ++k)
                for (std::size_t l = 0; l < M; ++l) r(i * M + k, j * M + l) = a(i, j) * b(k, l);
    return r;
}

template <std::size_t N, std::size_t M>
std::array<cplx, N * M> kron(const std::array<cplx, N>& a, const std::array<cplx, M>& b) {
    std::array<cplx, N * M> r{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = 0; k < M; ++k) r[i * M + k] = a[i] * b[k];
    return r;
}

/// Largest absolute entry of a - b.
template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < N * N; ++k) d = std::max(d, std::abs(a.entries()[k] - b.entries()[k]));
    return d;
}

template <std::size_t N>
double frobenius_norm(const Matrix<N>& a) {
    double s = 0.0;
    for (const auto& x : a.entries()) s += std::norm(x);
    return std::sqrt(s);
}

template <std::size_t N>
bool is_hermitian(const Matrix<N>& m, double tol = tol::kHermitian) {
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i; j < N; ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    return true;
}

namespace pauli {
inline Mat2 x() {
    Mat2 m;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}
inline Mat2 y() {
    Mat2 m;
    m(0, 1) = cplx(0.0, -1.0);
    m(1, 0) = cplx(0.0, 1.0);
    return m;
}
inline Mat2 z() { return Mat2::diagonal({1.0, -1.0}); }
/// sigma_1..3 for index 0..2.
inline Mat2 axis(std::size_t i) {
    switch (i) {
        case 0: return x();
        case 1: return y();
        default: return z();
    }
}
}  // namespace pauli

/// Eigenvalues (descending) and the matching orthonormal eigenvectors as columns.
template <std::size_t N>
struct EigenSystem {
    std::array<double, N> values{};
    Matrix<N> vectors;
};

namespace detail {

inline EigenSystem<2> eigh_closed_form(const Mat2& m) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const cplx b = m(0, 1);
    const double half_gap = std::hypot(0.5 * (a - d), std::abs(b));
    const double mean = 0.5 * (a + d);
    EigenSystem<2> es;
    es.values = {mean + half_gap, mean - half_gap};
    if (std::abs(b) <= 1e-300) {
        const bool swap = d > a;
        es.vectors(swap ? 1 : 0, 0) = 1.0;
        es.vectors(swap ? 0 : 1, 1) = 1.0;
        return es;
    }
    for (std::size_t k = 0; k < 2; ++k) {
        const double lam = es.values[k];
        // Two candidate null vectors of (m - lam); keep the better conditioned one.
        std::array<cplx, 2> u{b, lam - a};
        std::array<cplx, 2> w{lam - d, std::conj(b)};
        const double nu = std::sqrt(std::norm(u[0]) + std::norm(u[1]));
        const double nw = std::sqrt(std::norm(w[0]) + std::norm(w[1]));
        const auto& v = nu >= nw ? u : w;
        const double nv = std::max(nu, nw);
        es.vectors(0, k) = v[0] / nv;
        es.vectors(1, k) = v[1] / nv;
    }
    return es;
}

template <std::size_t N>
EigenSystem<N> eigh_jacobi(Matrix<N> a) {
    Matrix<N> v = Matrix<N>::identity();
    const double scale = std::max(1.0, frobenius_norm(a));
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) < 1e-4 * tol::kEigen * scale) break;

        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const double b = std::abs(a(p, q));
                if (b < 1e-300) continue;
                // Phase-rotate the (p,q) entry to the real axis, then apply a
                // real Jacobi rotation: J = diag(1, e^{-i alpha}) [[c, s], [-s, c]].
                const cplx phase = a(p, q) / b;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * b);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx jpp = c, jpq = s;
                const cplx jqp = -s * std::conj(phase), jqq = c * std::conj(phase);

                for (std::size_t k = 0; k < N; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::array<std::size_t, N> order{};
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
    EigenSystem<N> es;
    for (std::size_t k = 0; k < N; ++k) {
        es.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < N; ++i) es.vectors(i, k) = v(i, order[k]);
    }
    return es;
}

}  // namespace detail

/// Hermitian eigendecomposition: closed form for 2x2, cyclic complex Jacobi otherwise.
template <std::size_t N>
EigenSystem<N> eigh(const Matrix<N>& m) {
    if (!is_hermitian(m)) throw NotHermitianError("eigh: matrix is not Hermitian");
    if constexpr (N == 1) {
        EigenSystem<1> es;
        es.values[0] = m(0, 0).real();
        es.vectors(0, 0) = 1.0;
        return es;
    } else if constexpr (N == 2) {
        return detail::eigh_closed_form(m);
    } else {
        return detail::eigh_jacobi(m);
    }
}

/// Real eigenvalues of a Hermitian matrix, sorted descending.
template <std::size_t N>
std::array<double, N> eigenvalues_hermitian(const Matrix<N>& m) {
    return eigh(m).values;
}

/// Rebuild V diag(f(lambda)) V^dagger.
template <std::size_t N, class F>
Matrix<N> apply_spectral(const EigenSystem<N>& es, F&& f) {
    Matrix<N> r;
    for (std::size_t k = 0; k < N; ++k) {
        const double fk = f(es.values[k]);
        if (fk == 0.0) continue;
        const auto vk = es.vectors.column(k);
        r += fk * Matrix<N>::outer(vk, vk);
    }
    return r;
}

/// Unit-trace positive semidefinite Hermitian matrix. Construction validates.
template <std::size_t N>
class DensityMatrix {
public:
    /// Throws NotHermitianError / InvalidStateError.
    explicit DensityMatrix(const Matrix<N>& m) : m_(m) {
        if (!is_hermitian(m)) throw NotHermitianError("density matrix is not Hermitian");
        const cplx tr = m.trace();
        if (std::abs(tr - 1.0) > tol::kTrace)
            throw InvalidStateError("density matrix trace is " + std::to_string(tr.real()));
        const auto ev = eigenvalues_hermitian(m);
        if (ev[N - 1] < -tol::kPsd)
            throw InvalidStateError("density matrix has eigenvalue " + std::to_string(ev[N - 1]));
    }

    const Matrix<N>& matrix() const { return m_; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

private:
    Matrix<N> m_;
};

using Density2 = DensityMatrix<2>;
using Density4 = DensityMatrix<4>;

template <std::size_t N>
bool is_density(const Matrix<N>& m) {
    if (!is_hermitian(m)) return false;
    if (std::abs(m.trace() - 1.0) > tol::kTrace) return false;
    return eigenvalues_hermitian(m)[N - 1] >= -tol::kPsd;
}

/// Tr rho^2.
template <std::size_t N>
double purity(const DensityMatrix<N>& rho) {
    double s = 0.0;
    for (const auto& x : rho.matrix().entries()) s += std::norm(x);
    return s;
}

/// Concave f on [0,1] with f(0) = f(1) = 0; S_f(rho) = sum_i f(lambda_i).
class EntropyFunction {
public:
    enum class Kind { von_neumann, linear, custom };

    /// -x log2 x.
    static EntropyFunction von_neumann() {
        return EntropyFunction(Kind::von_neumann, [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; });
    }
    /// 2x(1-x), so that S_2 = 2(1 - Tr rho^2).
    static EntropyFunction linear() {
        return EntropyFunction(Kind::linear, [](double x) { return 2.0 * x * (1.0 - x); });
    }
    /// Throws InvalidEntropyFunctionError unless f(0) = f(1) = 0.
    static EntropyFunction custom(std::function<double(double)> f) {
        if (!f) throw InvalidEntropyFunctionError("entropy function is empty");
        const double f0 = f(0.0), f1 = f(1.0);
        if (!(std::abs(f0) <= 1e-12 && std::abs(f1) <= 1e-12))
            throw InvalidEntropyFunctionError("entropy function must vanish at 0 and 1");
        return EntropyFunction(Kind::custom, std::move(f));
    }

    Kind kind() const { return kind_; }
    double operator()(double x) const { return f_(x); }

private:
    EntropyFunction(Kind k, std::function<double(double)> f) : kind_(k), f_(std::move(f)) {}
    Kind kind_;
    std::function<double(double)> f_;
};

template <std::size_t N>
double entropy(const DensityMatrix<N>& rho, const EntropyFunction& f) {
    if (f.kind() == EntropyFunction::Kind::linear) return 2.0 * (1.0 - purity(rho));
    double s = 0.0;
    for (double lam : eigenvalues_hermitian(rho.matrix())) s += f(std::clamp(lam, 0.0, 1.0));
    return s;
}

/// Binary von Neumann entropy (bits) of the spectrum {x, 1-x}.
inline double binary_entropy(double x) {
    x = std::clamp(x, 0.0, 1.0);
    double h = 0.0;
    if (x > 0.0) h -= x * std::log2(x);
    if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
    return h;
}

/// Larger eigenvalue of a qubit (or rank-2) state with purity P: (1 + sqrt(2P - 1)) / 2.
inline double rank2_top_eigenvalue(double purity) {
    return 0.5 * (1.0 + std::sqrt(std::max(0.0, 2.0 * purity - 1.0)));
}

/// Von Neumann entropy (bits) of a rank <= 2 state from its purity alone.
inline double entropy_from_purity(double purity) { return binary_entropy(rank2_top_eigenvalue(purity)); }

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
    BlochVector scaled(double s) const { return {x * s, y * s, z * s}; }
    friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

/// (I + r.sigma) / 2; rejects |r| > 1.
inline Density2 bloch_to_density(const BlochVector& r) {
    if (r.norm() > 1.0 + tol::kBlochNorm)
        throw InvalidStateError("Bloch vector norm " + std::to_string(r.norm()) + " exceeds 1");
    Mat2 m;
    m(0, 0) = 0.5 * (1.0 + r.z);
    m(1, 1) = 0.5 * (1.0 - r.z);
    m(0, 1) = cplx(0.5 * r.x, -0.5 * r.y);
    m(1, 0) = cplx(0.5 * r.x, 0.5 * r.y);
    return Density2(m);
}

/// Tr(m sigma) for any 2x2 matrix (no validation).
inline BlochVector bloch_components(const Mat2& m) {
    return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
}

inline BlochVector density_to_bloch(const Density2& rho) { return bloch_components(rho.matrix()); }

/// Partial trace over the first factor (A) of a two-qubit operator.
inline Mat2 trace_out_a(const Mat4& m) {
    Mat2 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r(i, j) = m(i, j) + m(2 + i, 2 + j);
    return r;
}

/// Partial trace over the second factor (B) of a two-qubit operator.
inline Mat2 trace_out_b(const Mat4& m) {
    Mat2 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
    return r;
}

/// Half the trace norm of a - b (Hermitian arguments).
template <std::size_t N>
double trace_distance(const Matrix<N>& a, const Matrix<N>& b) {
    double s = 0.0;
    for (double lam : eigenvalues_hermitian(a - b)) s += std::abs(lam);
    return 0.5 * s;
}

/// F = Tr sqrt(sqrt(sigma) rho sqrt(sigma)). If either argument is pure,
/// F = sqrt(<psi|other|psi>) with no matrix square root.
template <std::size_t N>
double fidelity(const DensityMatrix<N>& rho, const DensityMatrix<N>& sigma) {
    const auto pure_overlap = [](const Matrix<N>& pure, const Matrix<N>& other) {
        const auto es = eigh(pure);
        const auto psi = es.vectors.column(0);
        return std::sqrt(std::max(0.0, inner(psi, other * psi).real()));
    };
    if (std::abs(purity(sigma) - 1.0) < 1e-12) return std::min(1.0, pure_overlap(sigma.matrix(), rho.matrix()));
    if (std::abs(purity(rho) - 1.0) < 1e-12) return std::min(1.0, pure_overlap(rho.matrix(), sigma.matrix()));

    // Round-off eigenvalues of rank-deficient states would add ~sqrt(eps) each.
    const auto clipped_sqrt = [](double x) { return x > 1e-14 ? std::sqrt(x) : 0.0; };
    const auto es = eigh(sigma.matrix());
    const Matrix<N> root = apply_spectral(es, clipped_sqrt);
    Matrix<N> inner_m = root * rho.matrix() * root;
    // Symmetrize away round-off before the Hermitian solver checks it.
    inner_m = 0.5 * (inner_m + inner_m.adjoint());
    double f = 0.0;
    for (double lam : eigenvalues_hermitian(inner_m)) f += clipped_sqrt(lam);
    return std::clamp(f, 0.0, 1.0);
}

}  // namespace qcorr

#endif  // QCORR_LINALG_HPP
