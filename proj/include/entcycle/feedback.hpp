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

#include <optional>

#include "entcycle/measurement.hpp"
#include "entcycle/modealg.hpp"
#include "entcycle/qstate.hpp"

namespace entcycle {

/// Product operation u_a (x) u_b. Each factor acts on one qubit only, so the
/// operation cannot create entanglement.
class LocalOp {
   public:
    LocalOp() : a_(Mat2::Identity()), b_(Mat2::Identity()) {}
    LocalOp(const Mat2& a, const Mat2& b);

    const Mat2& on_a() const { return a_; }
    const Mat2& on_b() const { return b_; }
    Mat4 full() const { return kron(a_, b_); }

    TwoQubitPure apply(const TwoQubitPure& s) const;
    DensityMatrix4 apply(const DensityMatrix4& rho) const;

   private:
    Mat2 a_;
    Mat2 b_;
};

bool is_unitary(const Mat2& u, double tol);

struct FlipOps {
    LocalOp f_a;   // pi-pulse i sigma_y on qubit A
    LocalOp f_b;   // pi-pulse on qubit B
    LocalOp f_ab;  // both
};

const FlipOps& flip_ops();

enum class FeedbackVariant { None, PdRecycle, HomMW, HomMWFlips };

struct FeedbackPolicy {
    FeedbackVariant variant = FeedbackVariant::None;
    int flip_period = 2;
    double t_activate = 0.0;
    /// Throws std::invalid_argument when flip_period < 1 or t_activate < 0.
    void validate() const;
};

enum class PdPhase { AwaitingFirstClick, InCycle };

struct PdPolicyState {
    PdPhase phase = PdPhase::AwaitingFirstClick;
    /// Set after an unflipped no-click step inside the cycle; the next
    /// no-click step then carries a double flip. Cleared on every click.
    bool parity_toggle = false;
    friend bool operator==(const PdPolicyState&, const PdPolicyState&) = default;
};

struct PdPolicyDecision {
    std::optional<LocalOp> op;
    PdPolicyState next;
};

/// Photodetection recycling controller: single flip on a single click,
/// double flip on every other no-click step while cycling, double flip and
/// restart on a double click.
PdPolicyDecision pd_policy_step(const PdPolicyState& state, const JumpOutcome& outcome);

/// Noise-cancelling homodyne feedback for the readout of the step that just
/// produced it. `prior` is the state before that measurement. Readouts are
/// scaled by sqrt(eta) for inefficient detection.
LocalOp mw_unitary(const HomodyneReadout& r, const TwoQubitPure& prior, const MeasurementSetup& setup);
LocalOp mw_unitary(const HomodyneReadout& r, const DensityMatrix4& prior, const MeasurementSetup& setup);

/// Feedback weight from the populations of |ee> and |gg>. Throws
/// std::domain_error when both vanish.
double mw_weight(double pop_ee, double pop_gg);

/// True when a double flip follows step `step_index` ending at time t.
bool schedule_flip(const FeedbackPolicy& policy, long step_index, double t);

}  // namespace entcycle
