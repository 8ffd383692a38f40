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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "entcycle/feedback.hpp"
#include "entcycle/measurement.hpp"
#include "entcycle/modealg.hpp"
#include "entcycle/qstate.hpp"

namespace entcycle {

enum class Scheme { Photodetection, Homodyne };

struct SimConfig {
    Scheme scheme = Scheme::Photodetection;
    FeedbackPolicy policy;
    MeasurementSetup setup;
    double t_max = 10.0;
    int n_traj = 1000;
    std::uint64_t master_seed = 12345;
    int record_stride = 1;
    bool record_elements = false;
    HomodyneSampling sampling = HomodyneSampling::Gaussian;
    /// Worker threads for run_ensemble; 0 picks the hardware concurrency.
    /// Results do not depend on it.
    int threads = 0;
    /// Full records are returned for trajectory indices below this.
    int keep_trajectories = 0;
    /// Kept records also log every outcome.
    bool record_outcomes = false;
    TwoQubitPure initial = TwoQubitPure::ee();

    long n_steps() const;
    /// Throws std::invalid_argument on inconsistent or out-of-range settings.
    void validate() const;
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<double> concurrence;
    std::vector<double> purity;
    // Filled when record_elements is set.
    std::vector<double> rho00;
    std::vector<double> rho33;
    std::vector<double> re_rho03;
    // Filled when record_outcomes is set.
    std::vector<JumpOutcome> jumps;
    std::vector<HomodyneReadout> readouts;
};

/// Time-resolved density of one matrix element over the ensemble.
struct ElementHistogram {
    std::string name;  // rho00, rho33 or re_rho03
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> bin_centers;
    std::vector<std::vector<double>> density;  // [time][bin], each row integrates to 1
};

struct EnsembleStats {
    int n_traj = 0;
    std::vector<double> times;
    std::vector<double> mean_c;
    std::vector<double> std_c;  // sample standard deviation
    std::vector<double> mean_purity;
    std::vector<double> q05;
    std::vector<double> q95;
    std::vector<ElementHistogram> histograms;
    std::vector<TrajectoryRecord> trajectories;
};

/// Carries the trajectory and step at which a run stopped.
class TrajectoryAbort : public std::runtime_error {
   public:
    TrajectoryAbort(long traj, long step, const std::string& why);
    long trajectory() const { return traj_; }
    long step() const { return step_; }

   private:
    long traj_;
    long step_;
};

inline constexpr int kHistogramBins = 50;

TrajectoryRecord run_trajectory(const SimConfig& cfg, long traj_index);
EnsembleStats run_ensemble(const SimConfig& cfg);
/// run_ensemble with record_elements forced on.
EnsembleStats element_histograms(const SimConfig& cfg);

const char* to_string(Scheme s);
const char* to_string(FeedbackVariant v);

}  // namespace entcycle
