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

#include <cmath>
#include <stdexcept>

#include "entcycle/modealg.hpp"
#include "entcycle/qstate.hpp"
#include "entcycle/rng.hpp"

namespace entcycle {

/// Raised when outcome probabilities no longer sum to one.
class StepAbort : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Homodyne currents for one step, in units of 1/sqrt(time).
struct HomodyneReadout {
    double r3 = 0.0;
    double r4 = 0.0;
    double x(double dt) const { return r3 * std::sqrt(dt / 2.0); }
    double y(double dt) const { return r4 * std::sqrt(dt / 2.0); }
    static HomodyneReadout from_quadratures(double x, double y, double dt) {
        const double s = std::sqrt(2.0 / dt);
        return {x * s, y * s};
    }
};

template <class Outcome, class State>
struct StepResult {
    Outcome outcome;
    State state_after;
    /// Outcome probability for photodetection; POVM density in (X, Y) for homodyne.
    double probability_or_density;
};

using PdStepPure = StepResult<JumpOutcome, TwoQubitPure>;
using PdStepMixed = StepResult<JumpOutcome, DensityMatrix4>;
using HomStepPure = StepResult<HomodyneReadout, TwoQubitPure>;
using HomStepMixed = StepResult<HomodyneReadout, DensityMatrix4>;

/// Largest tolerated deviation of the summed outcome probabilities from one.
inline constexpr double kProbabilityDriftTol = 1e-9;

/// Samples a photodetection outcome and applies the Bayes update. The pure
/// overload needs single-term groups (ideal detection).
PdStepPure pd_step(const TwoQubitPure& state, const KrausSet& kraus, Rng& rng);
PdStepMixed pd_step(const DensityMatrix4& rho, const KrausSet& kraus, Rng& rng);
/// Same as the mixed pd_step; named for call sites working with lossy sets.
inline PdStepMixed pd_step_lossy(const DensityMatrix4& rho, const KrausSet& lossy, Rng& rng) {
    return pd_step(rho, lossy, rng);
}

/// Deterministic conditional update for a given outcome. Throws
/// std::domain_error if the outcome has zero probability.
TwoQubitPure apply_pd_outcome(const TwoQubitPure& state, const KrausSet& kraus, const JumpOutcome& outcome);
DensityMatrix4 apply_pd_outcome(const DensityMatrix4& rho, const KrausSet& kraus, const JumpOutcome& outcome);

enum class HomodyneSampling {
    Gaussian,   // linear readout model: mean plus white noise of variance 1/dt
    ExactPovm,  // rejection sampling from the Kraus-operator density
};

/// Homodyne measurement for one configuration. Holds the precomputed Fock
/// table, so one instance is shared read-only across trajectories.
class HomodyneModel {
   public:
    explicit HomodyneModel(const MeasurementSetup& setup);

    const MeasurementSetup& setup() const { return setup_; }
    KrausGroup kraus_at(const HomodyneReadout& r) const;

    /// Means of r3 and r4 under the linear readout model, each scaled by the
    /// square root of its port efficiency.
    HomodyneReadout readout_mean(const TwoQubitPure& s) const;
    HomodyneReadout readout_mean(const DensityMatrix4& rho) const;

    /// Density of the quadrature pair (X, Y) for the given state.
    double povm_density(const DensityMatrix4& rho, double x, double y) const;

   private:
    MeasurementSetup setup_;
    FockKrausTable table_;
};

/// Pure overload requires a lossless model.
HomStepPure hom_step(const TwoQubitPure& state, const HomodyneModel& model, Rng& rng,
                     HomodyneSampling sampling = HomodyneSampling::Gaussian);
HomStepMixed hom_step(const DensityMatrix4& rho, const HomodyneModel& model, Rng& rng,
                      HomodyneSampling sampling = HomodyneSampling::Gaussian);

/// Bayes update for a given readout.
TwoQubitPure apply_hom_readout(const TwoQubitPure& state, const HomodyneModel& model, const HomodyneReadout& r);
DensityMatrix4 apply_hom_readout(const DensityMatrix4& rho, const HomodyneModel& model, const HomodyneReadout& r);

/// Sum over terms of M rho M^dagger, unnormalized.
Mat4 sandwich(const KrausGroup& group, const Mat4& rho);

}  // namespace entcycle
