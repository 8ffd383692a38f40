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

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace entcycle {

using cplx = std::complex<double>;
using Vec4 = Eigen::Matrix<cplx, 4, 1>;
using Mat4 = Eigen::Matrix<cplx, 4, 4>;
using Mat2 = Eigen::Matrix<cplx, 2, 2>;

// Two-qubit basis ordering used everywhere: {|ee>, |eg>, |ge>, |gg>}.
// Qubit A is the left tensor factor; |e> is the first single-qubit basis vector.
enum Basis : int { kEE = 0, kEG = 1, kGE = 2, kGG = 3 };

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/// Pure two-qubit state, amplitudes (a, b, c, d) on {|ee>, |eg>, |ge>, |gg>}.
class TwoQubitPure {
   public:
    TwoQubitPure();  // |ee>
    explicit TwoQubitPure(const Vec4& amp) : amp_(amp) {}
    TwoQubitPure(cplx a, cplx b, cplx c, cplx d);

    static TwoQubitPure basis(Basis which);
    static TwoQubitPure ee() { return basis(kEE); }
    static TwoQubitPure gg() { return basis(kGG); }
    static TwoQubitPure bell(BellLabel label);

    const Vec4& amplitudes() const { return amp_; }
    cplx operator[](int i) const { return amp_(i); }

    double norm_squared() const { return amp_.squaredNorm(); }
    /// Throws std::domain_error on a (numerically) zero vector.
    TwoQubitPure normalized() const;

   private:
    Vec4 amp_;
};

/// 4x4 two-qubit density matrix in the same basis as TwoQubitPure.
class DensityMatrix4 {
   public:
    DensityMatrix4();  // |ee><ee|

    static DensityMatrix4 from_pure(const TwoQubitPure& psi);
    static DensityMatrix4 maximally_mixed();
    /// Validates Hermiticity (1e-10), unit trace (1e-10) and eigenvalues >= -1e-9.
    static DensityMatrix4 checked(const Mat4& m);
    /// No validation; for hot paths that preserve the invariants by construction.
    static DensityMatrix4 unchecked(const Mat4& m) { return DensityMatrix4(m); }

    const Mat4& matrix() const { return m_; }
    cplx operator()(int r, int c) const { return m_(r, c); }
    double trace() const { return m_.trace().real(); }
    /// Divides by the trace. Throws std::domain_error on non-positive trace.
    DensityMatrix4 normalized() const;

   private:
    explicit DensityMatrix4(const Mat4& m) : m_(m) {}
    Mat4 m_;
};

bool is_hermitian(const Mat4& m, double tol);

/// 2|ad - bc|, clamped to [0, 1].
double concurrence_pure(const TwoQubitPure& s);

/// Wootters concurrence. Throws std::invalid_argument for non-Hermitian or
/// non-unit-trace input.
double concurrence_mixed(const DensityMatrix4& rho);

double purity(const DensityMatrix4& rho);
double fidelity_to(const TwoQubitPure& s, const DensityMatrix4& rho);

// Single-qubit Pauli matrices in the (|e>, |g>) basis.
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();
Mat4 kron(const Mat2& a, const Mat2& b);

}  // namespace entcycle
