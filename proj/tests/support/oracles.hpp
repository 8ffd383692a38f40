// Copyright 2026 The entcycle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent reference computations for the tests. Nothing here calls into
// the library's Fock-space machinery; operators are written out by hand.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using Mat4 = Eigen::Matrix<cplx, 4, 4>;
using Mat2 = Eigen::Matrix<cplx, 2, 2>;
using Vec4 = Eigen::Matrix<cplx, 4, 1>;

inline const cplx kI{0.0, 1.0};

// Basis {ee, eg, ge, gg}.
enum : int { EE = 0, EG = 1, GE = 2, GG = 3 };

/// Gauss-Hermite rule for integrals of exp(-x^2) f(x) via Golub-Welsch.
inline std::pair<std::vector<double>, std::vector<double>> gauss_hermite(int n) {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        jac(k, k - 1) = jac(k - 1, k) = std::sqrt(k / 2.0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
        x[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        w[i] = std::sqrt(std::numbers::pi) * v0 * v0;
    }
    return {x, w};
}

inline Vec4 random_pure(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Vec4 v;
    for (int i = 0; i < 4; ++i) v(i) = cplx(n(rng), n(rng));
    return v / v.norm();
}

/// Haar-random 2x2 unitary from the QR decomposition of a Ginibre matrix.
inline Mat2 random_unitary2(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Mat2 g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = cplx(n(rng), n(rng));
    Eigen::HouseholderQR<Mat2> qr(g);
    Mat2 q = qr.householderQ();
    const Mat2 r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < 2; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
    return q;
}

/// Random full-rank density matrix G G^dagger / tr.
inline Mat4 random_density(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Mat4 g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = cplx(n(rng), n(rng));
    Mat4 rho = g * g.adjoint();
    return rho / rho.trace();
}

inline Mat4 kron2(const Mat2& a, const Mat2& b) {
    Mat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

inline Mat2 sigma_y() {
    Mat2 m;
    m << 0.0, -kI, kI, 0.0;
    return m;
}

/// Wootters concurrence straight from the definition: square roots of the
/// eigenvalues of the non-Hermitian product rho (Y x Y) rho* (Y x Y).
inline double wootters(const Mat4& rho) {
    const Mat4 yy = kron2(sigma_y(), sigma_y());
    const Mat4 tilde = yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Mat4> es(rho * tilde);
    std::vector<double> lam;
    for (int i = 0; i < 4; ++i) lam.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i).real())));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

/// Concurrence of a state whose only coherences are rho03 and rho12.
inline double x_state_concurrence(const Mat4& rho) {
    const double p0 = rho(EE, EE).real(), p1 = rho(EG, EG).real(), p2 = rho(GE, GE).real(), p3 = rho(GG, GG).real();
    return 2.0 * std::max({0.0, std::abs(rho(EE, GG)) - std::sqrt(p1 * p2), std::abs(rho(EG, GE)) - std::sqrt(p0 * p3)});
}

/// Hand-expanded ideal photodetection operators for photon counts (n3, n4),
/// from the beamsplitter relations written out term by term.
inline Mat4 pd_kraus(int n3, int n4, double eps, double phi3, double phi4) {
    const cplx e3 = std::polar(1.0, phi3), e4 = std::polar(1.0, phi4);
    const double s = std::sqrt(eps * (1.0 - eps)), r = std::sqrt(eps), h = std::sqrt(0.5);
    Mat4 m = Mat4::Zero();
    if (n3 == 0 && n4 == 0) {
        m(EE, EE) = 1.0 - eps;
        m(EG, EG) = m(GE, GE) = std::sqrt(1.0 - eps);
        m(GG, GG) = 1.0;
    } else if (n3 == 1 && n4 == 0) {
        m(EG, EE) = m(GE, EE) = s * e3 * h;
        m(GG, EG) = m(GG, GE) = r * e3 * h;
    } else if (n3 == 0 && n4 == 1) {
        m(EG, EE) = -s * e4 * h;
        m(GE, EE) = s * e4 * h;
        m(GG, EG) = r * e4 * h;
        m(GG, GE) = -r * e4 * h;
    } else if (n3 == 2 && n4 == 0) {
        m(GG, EE) = eps * e3 * e3 * h;
    } else if (n3 == 0 && n4 == 2) {
        m(GG, EE) = -eps * e4 * e4 * h;
    }
    return m;
}

/// Homodyne operator at phases (0, pi/2) written entry by entry, without
/// the Gaussian weight.
inline Mat4 hom_kraus_unweighted(double x, double y, double eps) {
    const double s = std::sqrt(eps * (1.0 - eps)), r = std::sqrt(eps), c = std::sqrt(1.0 - eps);
    Mat4 m = Mat4::Zero();
    m(EE, EE) = 1.0 - eps;
    m(EG, EE) = s * cplx(x, -y);
    m(EG, EG) = c;
    m(GE, EE) = s * cplx(x, y);
    m(GE, GE) = c;
    m(GG, EE) = eps * (x * x + y * y - 1.0);
    m(GG, EG) = r * cplx(x, y);
    m(GG, GE) = r * cplx(x, -y);
    m(GG, GG) = 1.0;
    return m;
}

inline double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

/// Lossy photodetection operator by binomial splitting: each photon in a
/// port independently survives with probability eta.
inline Mat4 pd_kraus_lossy(int s3, int s4, int l3, int l4, double eps, double eta3, double eta4, double phi3,
                           double phi4) {
    const int n3 = s3 + l3, n4 = s4 + l4;
    const double amp = std::sqrt(binomial(n3, s3) * std::pow(eta3, s3) * std::pow(1.0 - eta3, l3) *
                                 binomial(n4, s4) * std::pow(eta4, s4) * std::pow(1.0 - eta4, l4));
    return amp * pd_kraus(n3, n4, eps, phi3, phi4);
}

/// Independent amplitude damping of both qubits over one step.
inline Mat4 decay_channel(const Mat4& rho, double eps) {
    Mat2 k0 = Mat2::Zero(), k1 = Mat2::Zero();
    k0(0, 0) = std::sqrt(1.0 - eps);
    k0(1, 1) = 1.0;
    k1(1, 0) = std::sqrt(eps);
    Mat4 out = Mat4::Zero();
    for (const Mat2* a : {&k0, &k1}) {
        for (const Mat2* b : {&k0, &k1}) {
            const Mat4 k = kron2(*a, *b);
            out += k * rho * k.adjoint();
        }
    }
    return out;
}

/// Forward-Euler step of the two-qubit decay master equation.
inline Mat4 lindblad_euler(const Mat4& rho, double eps) {
    Mat2 lower = Mat2::Zero();
    lower(1, 0) = 1.0;
    const Mat2 id = Mat2::Identity();
    Mat4 out = rho;
    for (const Mat4& l : {kron2(lower, id), kron2(id, lower)}) {
        const Mat4 ld = l.adjoint() * l;
        out += eps * (l * rho * l.adjoint() - 0.5 * (ld * rho + rho * ld));
    }
    return out;
}

inline double trace_distance(const Mat4& a, const Mat4& b) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(a - b, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

/// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
    }
    return d;
}

/// Critical KS distance at significance alpha = 0.01.
inline double ks_critical_001(std::size_t n, std::size_t m) {
    return 1.628 * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

}  // namespace oracle
