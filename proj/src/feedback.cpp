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

#include "entcycle/feedback.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entcycle {

namespace {

constexpr double kUnitaryTol = 1e-12;
// Absorbs rounding in t = (k + 1) dt when comparing against an activation time.
constexpr double kTimeSlack = 1e-12;

// exp(i (vx sigma_x + vy sigma_y)).
Mat2 exp_i_pauli(double vx, double vy) {
    const double n = std::hypot(vx, vy);
    if (n == 0.0) return Mat2::Identity();
    const Mat2 dir = (vx / n) * pauli_x() + (vy / n) * pauli_y();
    return std::cos(n) * Mat2::Identity() + cplx(0.0, std::sin(n)) * dir;
}

LocalOp mw_from_weight(double weight, double r3, double r4, const MeasurementSetup& setup) {
    const double kappa = setup.dt * std::sqrt(setup.gamma / 2.0) * weight;
    // Exponent i kappa [r3 (sy_A + sy_B) + r4 (sx_B - sx_A)] splits per qubit.
    return LocalOp(exp_i_pauli(-kappa * r4, kappa * r3), exp_i_pauli(kappa * r4, kappa * r3));
}

}  // namespace

LocalOp::LocalOp(const Mat2& a, const Mat2& b) : a_(a), b_(b) {
    if (!is_unitary(a, kUnitaryTol) || !is_unitary(b, kUnitaryTol)) {
        throw std::invalid_argument("LocalOp factors must be unitary");
    }
}

TwoQubitPure LocalOp::apply(const TwoQubitPure& s) const { return TwoQubitPure(full() * s.amplitudes()); }

DensityMatrix4 LocalOp::apply(const DensityMatrix4& rho) const {
    const Mat4 u = full();
    return DensityMatrix4::unchecked(u * rho.matrix() * u.adjoint());
}

bool is_unitary(const Mat2& u, double tol) {
    return (u.adjoint() * u - Mat2::Identity()).cwiseAbs().maxCoeff() <= tol;
}

const FlipOps& flip_ops() {
    static const FlipOps ops = [] {
        const Mat2 flip = cplx(0.0, 1.0) * pauli_y();
        const Mat2 id = Mat2::Identity();
        return FlipOps{LocalOp(flip, id), LocalOp(id, flip), LocalOp(flip, flip)};
    }();
    return ops;
}

void FeedbackPolicy::validate() const {
    if (flip_period < 1) throw std::invalid_argument("flip_period must be at least 1");
    if (!(t_activate >= 0.0)) throw std::invalid_argument("t_activate must be non-negative");
}

PdPolicyDecision pd_policy_step(const PdPolicyState& state, const JumpOutcome& outcome) {
    const FlipOps& f = flip_ops();
    switch (outcome.total()) {
        case 0:
            if (state.phase == PdPhase::AwaitingFirstClick) return {std::nullopt, state};
            if (state.parity_toggle) return {f.f_ab, {PdPhase::InCycle, false}};
            return {std::nullopt, {PdPhase::InCycle, true}};
        case 1:
            return {f.f_a, {PdPhase::InCycle, false}};
        case 2:
            return {f.f_ab, {PdPhase::AwaitingFirstClick, false}};
        default:
            throw std::invalid_argument("pd_policy_step: unknown outcome");
    }
}

double mw_weight(double pop_ee, double pop_gg) {
    const double se = std::sqrt(std::max(0.0, pop_ee));
    const double sg = std::sqrt(std::max(0.0, pop_gg));
    if (!(se + sg > 1e-12)) throw std::domain_error("feedback weight undefined: |ee> and |gg> both empty");
    return se / (se + sg);
}

LocalOp mw_unitary(const HomodyneReadout& r, const TwoQubitPure& prior, const MeasurementSetup& setup) {
    // Along a|ee> + d|gg> with d = -sgn(a) sqrt(1 - a^2) the exact
    // cancelling weight a/(a - d) equals |a|/(|a| + sqrt(1 - a^2)).
    const double a = std::abs(prior[kEE]);
    const double w = a / (a + std::sqrt(std::max(0.0, 1.0 - a * a)));
    return mw_from_weight(w, r.r3, r.r4, setup);
}

LocalOp mw_unitary(const HomodyneReadout& r, const DensityMatrix4& prior, const MeasurementSetup& setup) {
    const double w = mw_weight(prior(kEE, kEE).real(), prior(kGG, kGG).real());
    return mw_from_weight(w, std::sqrt(setup.eta3) * r.r3, std::sqrt(setup.eta4) * r.r4, setup);
}

bool schedule_flip(const FeedbackPolicy& policy, long step_index, double t) {
    return t + kTimeSlack >= policy.t_activate && step_index % policy.flip_period == 0;
}

}  // namespace entcycle
