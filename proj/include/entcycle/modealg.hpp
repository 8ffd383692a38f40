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

#include <array>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "entcycle/qstate.hpp"

namespace entcycle {

/// Truncated multimode Fock space holding every occupation tuple whose total
/// photon number is at most max_total.
class FockSpace {
   public:
    using Occupation = std::vector<int>;

    FockSpace(int n_modes, int max_total = 2);

    int n_modes() const { return n_modes_; }
    int max_total() const { return max_total_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const Occupation& state(int index) const { return basis_.at(index); }
    /// Returns -1 when the tuple lies outside the truncation.
    int index_of(const Occupation& occ) const;
    int vacuum_index() const { return 0; }

    /// Creation operator for one mode. Components leaving the truncated space
    /// are dropped, which never happens when acting on at most max_total - 1
    /// photons.
    Eigen::MatrixXcd creation(int mode) const;
    Eigen::MatrixXcd identity() const;

   private:
    int n_modes_;
    int max_total_;
    std::vector<Occupation> basis_;
};

/// Photon counts in output ports 3 and 4 (or in the two lost modes).
struct JumpOutcome {
    int n3 = 0;
    int n4 = 0;
    int total() const { return n3 + n4; }
    friend bool operator==(const JumpOutcome&, const JumpOutcome&) = default;
};

/// The five single-step photodetection outcomes, no-click first.
const std::array<JumpOutcome, 5>& jump_outcomes();

struct MeasurementSetup {
    double gamma = 1.0;  // decay rate, units of 1/T1
    double dt = 0.01;    // units of T1
    double phi3 = 0.0;
    double phi4 = std::numbers::pi / 2.0;
    double eta3 = 1.0;
    double eta4 = 1.0;

    double eps() const { return gamma * dt; }
    bool lossless() const { return eta3 == 1.0 && eta4 == 1.0; }
    /// Throws std::invalid_argument for eps outside (0, 1), non-positive
    /// gamma or dt, or efficiencies outside [0, 1]. Returns false (and leaves
    /// the setup usable) when eps exceeds 0.1, where the one-step expansion is
    /// getting coarse.
    bool validate() const;
};

/// Qubit block matrix with field-space operator entries. Entry (row, col)
/// maps qubit basis state col to row while acting on the field.
struct JointOperator {
    FockSpace space;
    std::array<std::array<Eigen::MatrixXcd, 4>, 4> blocks;
};

/// Joint qubit-field operator for one timestep, expressed in detector ports 3
/// and 4 (two modes, at most two photons).
JointOperator build_joint_matrix(const MeasurementSetup& setup);

/// Sends each port through a beamsplitter of transmissivity eta. The result
/// acts on four modes ordered (3s, 4s, 3l, 4l): signal modes first.
JointOperator apply_loss_splitters(const JointOperator& j, const MeasurementSetup& setup);

/// One Kraus operator together with the lost-mode occupation it belongs to.
struct KrausTerm {
    JumpOutcome lost;
    Mat4 op;
};

/// All operators sharing one detected outcome. Their contributions are summed
/// in the state update.
struct KrausGroup {
    JumpOutcome signal;
    std::vector<KrausTerm> terms;
    Mat4 effect;  // sum of op^dagger op over terms
};

struct KrausSet {
    std::vector<KrausGroup> groups;
    /// Sum of all effects, which should be the identity.
    Mat4 completeness() const;
    const KrausGroup& group(const JumpOutcome& signal) const;
};

/// Ideal photodetection Kraus operators for the five outcomes.
/// Requires a two-mode (lossless) joint operator.
KrausSet extract_pd_kraus(const JointOperator& j);

struct HomodyneKraus {
    Mat4 op;        // includes the Gaussian weight
    double weight;  // pi^(-1/2) exp(-(X^2 + Y^2) / 2)
};

/// Ideal homodyne Kraus operator at quadrature outcomes (X, Y).
HomodyneKraus extract_hom_kraus(const JointOperator& j, double x, double y);

/// Terms over lost-mode outcomes for a detected photon-count pair.
KrausGroup extract_lossy_kraus(const JointOperator& j, const JumpOutcome& signal);
/// Terms over lost-mode outcomes for detected quadratures (X, Y).
KrausGroup extract_lossy_kraus(const JointOperator& j, double x, double y);

/// Photodetection Kraus set for any efficiency: ideal operators when the
/// setup is lossless, lossy groups otherwise.
KrausSet build_pd_kraus(const MeasurementSetup& setup);

/// Normalized quadrature wavefunction <x|n> for n <= 2.
double fock_wavefunction(int n, double x);

/// Precomputed matrix elements <signal, lost| M |vacuum> for every Fock pair.
/// Homodyne operators at any (X, Y) are then a short weighted sum.
class FockKrausTable {
   public:
    explicit FockKrausTable(const JointOperator& j);

    bool has_loss_modes() const { return has_loss_; }
    /// Operator for a detected Fock pair and a lost Fock pair.
    Mat4 fock(const JumpOutcome& signal, const JumpOutcome& lost) const;
    /// Terms over the five lost outcomes at quadratures (X, Y); only (0,0)
    /// when there are no loss modes.
    KrausGroup quadrature(double x, double y) const;

   private:
    bool has_loss_;
    std::vector<JumpOutcome> signal_states_;
    std::vector<JumpOutcome> lost_states_;
    std::vector<std::vector<Mat4>> ops_;  // [signal][lost]
};

}  // namespace entcycle
