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

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;
using std::numbers::pi;

namespace {

template <std::size_t N>
Eigen::Matrix<std::complex<double>, N, N> to_eigen(const Matrix<N>& m) {
    Eigen::Matrix<std::complex<double>, N, N> e;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) e(i, j) = m(i, j);
    return e;
}

template <std::size_t N>
Matrix<N> random_hermitian(std::mt19937_64& gen) {
    std::normal_distribution<double> g;
    Matrix<N> m;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) m(i, j) = cplx(g(gen), g(gen));
    return 0.5 * (m + m.adjoint());
}

template <std::size_t N>
Matrix<N> random_density(std::mt19937_64& gen) {
    std::normal_distribution<double> g;
    Matrix<N> a;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) a(i, j) = cplx(g(gen), g(gen));
    Matrix<N> m = a * a.adjoint();
    return (1.0 / m.trace().real()) * m;
}

}  // namespace

TEST(Eigh, IdentityAndDiagonal) {
    const auto e1 = eigenvalues_hermitian(Mat2::identity());
    EXPECT_DOUBLE_EQ(e1[0], 1.0);
    EXPECT_DOUBLE_EQ(e1[1], 1.0);
    const auto e2 = eigenvalues_hermitian(Mat2::diagonal({0.25, 0.75}));
    EXPECT_NEAR(e2[0], 0.75, 1e-15);
    EXPECT_NEAR(e2[1], 0.25, 1e-15);
}

TEST(Eigh, ThetaStateSpectrum) {
    const auto ev = eigenvalues_hermitian(make_theta_state(ThetaPState(pi / 3, 0.5)).matrix());
    EXPECT_NEAR(ev[0], 0.625, 1e-12);
    EXPECT_NEAR(ev[1], 0.375, 1e-12);
    EXPECT_NEAR(ev[2], 0.0, 1e-12);
    EXPECT_NEAR(ev[3], 0.0, 1e-12);
}

TEST(Eigh, RejectsNonHermitian) {
    Mat2 m;
    m(0, 1) = 1.0;
    EXPECT_THROW(eigh(m), NotHermitianError);
}

TEST(Eigh, MatchesEigenOnRandomHermitian4) {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto m = random_hermitian<4>(gen);
        const auto ours = eigh(m);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(to_eigen(m));
        for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(ours.values[i], es.eigenvalues()(3 - i), 1e-12);
        // A v = lambda v for every returned pair.
        for (std::size_t k = 0; k < 4; ++k) {
            const auto v = ours.vectors.column(k);
            const auto av = m * v;
            for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(std::abs(av[i] - ours.values[k] * v[i]), 1e-11);
        }
    }
}

TEST(Eigh, MatchesEigenOnRandomHermitian2And3) {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto m2 = random_hermitian<2>(gen);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> e2(to_eigen(m2));
        const auto o2 = eigenvalues_hermitian(m2);
        EXPECT_NEAR(o2[0], e2.eigenvalues()(1), 1e-12);
        EXPECT_NEAR(o2[1], e2.eigenvalues()(0), 1e-12);
        const auto m3 = random_hermitian<3>(gen);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> e3(to_eigen(m3));
        const auto o3 = eigenvalues_hermitian(m3);
        for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(o3[i], e3.eigenvalues()(2 - i), 1e-12);
    }
}

TEST(Eigh, DegenerateSpectrumOrthonormalVectors) {
    const Mat4 m = Mat4::diagonal({0.5, 0.5, 0.0, 0.0});
    const auto es = eigh(m);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
            EXPECT_NEAR(std::abs(inner(es.vectors.column(a), es.vectors.column(b))), a == b ? 1.0 : 0.0, 1e-12);
}

TEST(Purity, Examples) {
    const std::array<cplx, 2> v{cplx(0.6), cplx(0.0, 0.8)};
    EXPECT_NEAR(purity(Density2(Mat2::outer(v, v))), 1.0, 1e-14);
    EXPECT_NEAR(purity(Density2(0.5 * Mat2::identity())), 0.5, 1e-15);
    EXPECT_NEAR(purity(make_theta_state(ThetaPState(pi / 3, 0.5))), 0.53125, 1e-14);
}

TEST(Purity, MatchesSumOfSquaredEigenvalues) {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 50; ++trial) {
        const Density4 rho(random_density<4>(gen));
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(to_eigen(rho.matrix()));
        EXPECT_NEAR(purity(rho), es.eigenvalues().squaredNorm(), 1e-12);
    }
}

TEST(DensityMatrix, Validation) {
    EXPECT_THROW(Density2(Mat2::diagonal({0.7, 0.7})), InvalidStateError);
    EXPECT_THROW(Density2(Mat2::diagonal({1.2, -0.2})), InvalidStateError);
    Mat2 nh = 0.5 * Mat2::identity();
    nh(0, 1) = 0.1;
    EXPECT_THROW(Density2{nh}, NotHermitianError);
    EXPECT_NO_THROW(Density2(Mat2::diagonal({1.0, 0.0})));
}

TEST(Entropy, Examples) {
    const auto vn = EntropyFunction::von_neumann();
    const auto lin = EntropyFunction::linear();
    const Density2 pure(Mat2::diagonal({1.0, 0.0}));
    EXPECT_NEAR(entropy(pure, vn), 0.0, 1e-15);
    EXPECT_NEAR(entropy(pure, lin), 0.0, 1e-15);
    const ThetaPState s(pi / 3, 0.5);
    // rho_B has eigenvalues (0.75, 0.25): H2 = 2 - (3/4) log2 3.
    EXPECT_NEAR(entropy(local_state(s), vn), 2.0 - 0.75 * std::log2(3.0), 1e-12);
    EXPECT_NEAR(entropy(local_state(s), vn), 0.811278, 1e-6);
    EXPECT_NEAR(entropy(make_theta_state(s), lin), 2.0 * (1.0 - 0.53125), 1e-12);
    EXPECT_NEAR(entropy(make_theta_state(s), lin), 0.9375, 1e-12);
}

TEST(Entropy, CustomFunctionValidated) {
    EXPECT_THROW(EntropyFunction::custom([](double x) { return x; }), InvalidEntropyFunctionError);
    EXPECT_THROW(EntropyFunction::custom([](double x) { return 1.0 - x; }), InvalidEntropyFunctionError);
    const auto f = EntropyFunction::custom([](double x) { return x * (1.0 - x); });
    EXPECT_NEAR(entropy(Density2(0.5 * Mat2::identity()), f), 0.5, 1e-14);
}

TEST(Entropy, ConcaveFunctionsRespectMajorization) {
    // A state that majorizes another has lower entropy for every concave f.
    const auto vn = EntropyFunction::von_neumann();
    const auto lin = EntropyFunction::linear();
    for (double a = 0.5; a < 1.0; a += 0.05) {
        const Density2 r1(Mat2::diagonal({a, 1.0 - a}));
        const Density2 r2(Mat2::diagonal({a + 0.01, 0.99 - a}));
        EXPECT_GE(entropy(r1, vn), entropy(r2, vn));
        EXPECT_GE(entropy(r1, lin), entropy(r2, lin));
    }
}

TEST(Entropy, FromPurityMatchesSpectrum) {
    for (double a = 0.5; a <= 1.0; a += 0.03) {
        const double pur = a * a + (1 - a) * (1 - a);
        EXPECT_NEAR(rank2_top_eigenvalue(pur), a, 1e-7);
        EXPECT_NEAR(entropy_from_purity(pur), binary_entropy(a), 1e-7);
    }
}

TEST(Bloch, Examples) {
    const auto up = bloch_to_density({0, 0, 1});
    EXPECT_NEAR(std::abs(up(0, 0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(up(1, 1)), 0.0, 1e-15);
    const auto mixed = bloch_to_density({0, 0, 0});
    EXPECT_LT(max_abs_diff(mixed.matrix(), 0.5 * Mat2::identity()), 1e-15);
    const auto r = density_to_bloch(local_state(ThetaPState(pi / 3, 0.7)));
    EXPECT_NEAR(r.x, 0.4 * std::sin(pi / 3), 1e-12);
    EXPECT_NEAR(r.x, 0.346410, 1e-6);
    EXPECT_NEAR(r.y, 0.0, 1e-15);
    EXPECT_NEAR(r.z, 0.5, 1e-12);
}

TEST(Bloch, RoundTripAndRejectsOutsideBall) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(-0.57, 0.57);
    for (int i = 0; i < 100; ++i) {
        const BlochVector b{u(gen), u(gen), u(gen)};
        const auto back = density_to_bloch(bloch_to_density(b));
        EXPECT_NEAR(back.x, b.x, 1e-14);
        EXPECT_NEAR(back.y, b.y, 1e-14);
        EXPECT_NEAR(back.z, b.z, 1e-14);
    }
    EXPECT_THROW(bloch_to_density({0.0, 0.0, 1.01}), InvalidStateError);
}

TEST(Fidelity, Examples) {
    const auto a = bloch_to_density({0, 0, 1});
    const auto b = bloch_to_density({0, 0, -1});
    EXPECT_NEAR(fidelity(a, a), 1.0, 1e-12);
    EXPECT_NEAR(fidelity(a, b), 0.0, 1e-12);
    const auto r1 = make_theta_state(ThetaPState(pi / 3, 0.5));
    const auto r2 = make_theta_state(ThetaPState(pi / 3, 0.55));
    const double f = fidelity(r1, r2);
    EXPECT_GT(f, 0.99);
    EXPECT_LT(f, 1.0);
    // Both states live on span{|tt>, |-t-t>}; compare with the 2x2 fidelity
    // in that (non-orthogonal) basis computed through Eigen.
    Eigen::Matrix4cd e1 = to_eigen(r1.matrix()), e2 = to_eigen(r2.matrix());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> s1(e1);
    Eigen::Matrix4cd sq = s1.eigenvectors() * s1.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                          s1.eigenvectors().adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> s2(sq * e2 * sq);
    const double ref = s2.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    EXPECT_NEAR(f, ref, 1e-8);
    // 40-digit reference from an arbitrary-precision eigensolver.
    EXPECT_NEAR(f, 0.99882448965958384, 1e-12);
    EXPECT_NEAR(fidelity(r2, r1), f, 1e-10);
}

TEST(PartialTrace, ProductState) {
    const auto s1 = bloch_to_density({0.3, -0.2, 0.5});
    const auto s2 = bloch_to_density({-0.1, 0.6, 0.2});
    const Mat4 prod = kron(s1.matrix(), s2.matrix());
    EXPECT_LT(max_abs_diff(trace_out_b(prod), s1.matrix()), 1e-15);
    EXPECT_LT(max_abs_diff(trace_out_a(prod), s2.matrix()), 1e-15);
}

TEST(TraceDistance, Basic) {
    const auto a = bloch_to_density({0, 0, 1});
    const auto b = bloch_to_density({0, 0, -1});
    EXPECT_NEAR(trace_distance(a.matrix(), b.matrix()), 1.0, 1e-14);
    EXPECT_NEAR(trace_distance(a.matrix(), a.matrix()), 0.0, 1e-14);
}
