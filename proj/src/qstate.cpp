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

#include "entcycle/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace entcycle {

namespace {

constexpr double kStateTol = 1e-10;
constexpr double kEigenFloor = -1e-9;
// Eigenvalues of rho below this (relative to the trace) are treated as exact
// zeros before taking square roots, otherwise roundoff of order 1e-16 turns
// into concurrence errors of order 1e-8 for rank-deficient states.
constexpr double kRankCutoff = 1e-12;

Mat4 spin_flip_operator() {
    const Mat2 y = pauli_y();
    return kron(y, y);
}

Mat4 psd_sqrt(const Mat4& m) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(m);
    Eigen::Vector4d ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    for (int i = 0; i < 4; ++i) {
        ev(i) = ev(i) < kRankCutoff * scale ? 0.0 : std::sqrt(ev(i));
    }
    return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

TwoQubitPure::TwoQubitPure() : amp_(Vec4::Zero()) { amp_(kEE) = 1.0; }

TwoQubitPure::TwoQubitPure(cplx a, cplx b, cplx c, cplx d) { amp_ << a, b, c, d; }

TwoQubitPure TwoQubitPure::basis(Basis which) {
    Vec4 v = Vec4::Zero();
    v(which) = 1.0;
    return TwoQubitPure(v);
}

TwoQubitPure TwoQubitPure::bell(BellLabel label) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (label) {
        case BellLabel::PhiPlus:
            return {r, 0.0, 0.0, r};
        case BellLabel::PhiMinus:
            return {r, 0.0, 0.0, -r};
        case BellLabel::PsiPlus:
            return {0.0, r, r, 0.0};
        case BellLabel::PsiMinus:
            return {0.0, r, -r, 0.0};
    }
    throw std::invalid_argument("unknown Bell label");
}

TwoQubitPure TwoQubitPure::normalized() const {
    const double n = amp_.norm();
    if (!(n > 1e-300) || !std::isfinite(n)) {
        throw std::domain_error("cannot normalize a zero or non-finite state vector");
    }
    return TwoQubitPure(amp_ / n);
}

DensityMatrix4::DensityMatrix4() : m_(Mat4::Zero()) { m_(kEE, kEE) = 1.0; }

DensityMatrix4 DensityMatrix4::from_pure(const TwoQubitPure& psi) {
    const Vec4& v = psi.amplitudes();
    return DensityMatrix4(v * v.adjoint());
}

DensityMatrix4 DensityMatrix4::maximally_mixed() { return DensityMatrix4(Mat4::Identity() * 0.25); }

DensityMatrix4 DensityMatrix4::checked(const Mat4& m) {
    if (!is_hermitian(m, kStateTol)) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(m.trace() - cplx(1.0)) > kStateTol) {
        throw std::invalid_argument("density matrix trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<Mat4> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kEigenFloor) {
        throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
    return DensityMatrix4(m);
}

DensityMatrix4 DensityMatrix4::normalized() const {
    const double tr = trace();
    if (!(tr > 1e-300) || !std::isfinite(tr)) {
        throw std::domain_error("cannot normalize a density matrix with non-positive trace");
    }
    return DensityMatrix4(m_ / tr);
}

bool is_hermitian(const Mat4& m, double tol) { return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol; }

double concurrence_pure(const TwoQubitPure& s) {
    const double c = 2.0 * std::abs(s[kEE] * s[kGG] - s[kEG] * s[kGE]);
    return std::clamp(c, 0.0, 1.0);
}

double concurrence_mixed(const DensityMatrix4& rho) {
    const Mat4& m = rho.matrix();
    if (!is_hermitian(m, kStateTol)) {
        throw std::invalid_argument("concurrence_mixed: input is not Hermitian");
    }
    if (std::abs(m.trace() - cplx(1.0)) > kStateTol) {
        throw std::invalid_argument("concurrence_mixed: trace differs from 1");
    }
    // The square roots of the eigenvalues of sqrt(rho) rho~ sqrt(rho) are the
    // singular values of sqrt(rho) (Y x Y) conj(sqrt(rho)).
    const Mat4 root = psd_sqrt(m);
    const Mat4 a = root * spin_flip_operator() * root.conjugate();
    Eigen::JacobiSVD<Mat4> svd(a);
    const Eigen::Vector4d lam = svd.singularValues();  // descending
    const double c = lam(0) - lam(1) - lam(2) - lam(3);
    return std::clamp(c, 0.0, 1.0);
}

double purity(const DensityMatrix4& rho) { return (rho.matrix() * rho.matrix()).trace().real(); }

double fidelity_to(const TwoQubitPure& s, const DensityMatrix4& rho) {
    const Vec4& v = s.amplitudes();
    return (v.adjoint() * rho.matrix() * v)(0, 0).real();
}

Mat2 pauli_x() {
    Mat2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Mat2 pauli_y() {
    Mat2 m;
    m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
    return m;
}

Mat2 pauli_z() {
    Mat2 m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace entcycle
