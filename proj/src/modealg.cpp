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

#include "entcycle/modealg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace entcycle {

namespace {

constexpr double kAmplitudeTol = 1e-12;

enum : int { kSignal3 = 0, kSignal4 = 1, kLost3 = 2, kLost4 = 3 };

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

void require_two_modes(const JointOperator& j, const char* who) {
    if (j.space.n_modes() != 2) {
        throw std::invalid_argument(std::string(who) + ": expected a two-port joint operator");
    }
}

// Checks that the operator applied to (qubit basis state) x (field vacuum)
// stays normalized inside the truncated space.
void check_vacuum_columns(const JointOperator& j) {
    const int vac = j.space.vacuum_index();
    for (int col = 0; col < 4; ++col) {
        double norm = 0.0;
        for (int row = 0; row < 4; ++row) norm += j.blocks[row][col].col(vac).squaredNorm();
        if (std::abs(norm - 1.0) > kAmplitudeTol) {
            throw std::logic_error("joint operator loses amplitude under Fock truncation");
        }
    }
}

// Passive linear-optics unitary on a truncated space. transform(m, k) is the
// amplitude for an input photon in mode k to leave in mode m.
Eigen::MatrixXcd passive_unitary(const FockSpace& space, const Eigen::MatrixXcd& transform) {
    const int dim = space.dim();
    std::vector<Eigen::MatrixXcd> out_creation;
    for (int k = 0; k < space.n_modes(); ++k) {
        Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(dim, dim);
        for (int m = 0; m < space.n_modes(); ++m) b += transform(m, k) * space.creation(m);
        out_creation.push_back(std::move(b));
    }
    Eigen::MatrixXcd u(dim, dim);
    for (int col = 0; col < dim; ++col) {
        const auto& occ = space.state(col);
        Eigen::VectorXcd v = Eigen::VectorXcd::Unit(dim, space.vacuum_index());
        double norm = 1.0;
        for (int k = 0; k < space.n_modes(); ++k) {
            for (int p = 0; p < occ[k]; ++p) v = out_creation[k] * v;
            norm *= factorial(occ[k]);
        }
        u.col(col) = v / std::sqrt(norm);
    }
    return u;
}

// Lifts a two-mode operator onto four modes with the last two as spectators.
Eigen::MatrixXcd embed_signal_operator(const FockSpace& two, const FockSpace& four, const Eigen::MatrixXcd& op) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(four.dim(), four.dim());
    for (int col = 0; col < four.dim(); ++col) {
        const auto& occ = four.state(col);
        const int src = two.index_of({occ[kSignal3], occ[kSignal4]});
        for (int r = 0; r < two.dim(); ++r) {
            if (op(r, src) == cplx(0.0)) continue;
            const auto& sig = two.state(r);
            const int dst = four.index_of({sig[0], sig[1], occ[kLost3], occ[kLost4]});
            if (dst >= 0) out(dst, col) += op(r, src);
        }
    }
    return out;
}

std::vector<JumpOutcome> pairs_up_to(int max_total) {
    std::vector<JumpOutcome> out;
    for (int total = 0; total <= max_total; ++total) {
        for (int n3 = total; n3 >= 0; --n3) out.push_back({n3, total - n3});
    }
    return out;
}

Mat4 effect_of(const std::vector<KrausTerm>& terms) {
    Mat4 e = Mat4::Zero();
    for (const auto& t : terms) e += t.op.adjoint() * t.op;
    return e;
}

KrausGroup make_group(const JumpOutcome& signal, std::vector<KrausTerm> terms) {
    KrausGroup g{signal, std::move(terms), Mat4::Zero()};
    g.effect = effect_of(g.terms);
    return g;
}

}  // namespace

FockSpace::FockSpace(int n_modes, int max_total) : n_modes_(n_modes), max_total_(max_total) {
    if (n_modes < 1 || max_total < 0) {
        throw std::invalid_argument("FockSpace needs at least one mode and a non-negative cutoff");
    }
    Occupation occ(n_modes, 0);
    std::function<void(int, int)> fill = [&](int mode, int left) {
        if (mode == n_modes) {
            basis_.push_back(occ);
            return;
        }
        for (int n = 0; n <= left; ++n) {
            occ[mode] = n;
            fill(mode + 1, left - n);
        }
        occ[mode] = 0;
    };
    fill(0, max_total);
    std::stable_sort(basis_.begin(), basis_.end(), [](const Occupation& a, const Occupation& b) {
        return std::accumulate(a.begin(), a.end(), 0) < std::accumulate(b.begin(), b.end(), 0);
    });
}

int FockSpace::index_of(const Occupation& occ) const {
    const auto it = std::find(basis_.begin(), basis_.end(), occ);
    return it == basis_.end() ? -1 : static_cast<int>(it - basis_.begin());
}

Eigen::MatrixXcd FockSpace::creation(int mode) const {
    if (mode < 0 || mode >= n_modes_) throw std::out_of_range("FockSpace::creation: bad mode");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim(), dim());
    for (int col = 0; col < dim(); ++col) {
        Occupation up = basis_[col];
        up[mode] += 1;
        const int row = index_of(up);
        if (row >= 0) m(row, col) = std::sqrt(static_cast<double>(up[mode]));
    }
    return m;
}

Eigen::MatrixXcd FockSpace::identity() const { return Eigen::MatrixXcd::Identity(dim(), dim()); }

const std::array<JumpOutcome, 5>& jump_outcomes() {
    static const std::array<JumpOutcome, 5> kOutcomes{{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {0, 2}}};
    return kOutcomes;
}

bool MeasurementSetup::validate() const {
    if (!(gamma > 0.0) || !(dt > 0.0)) throw std::invalid_argument("gamma and dt must be positive");
    if (!(eps() < 1.0)) throw std::invalid_argument("gamma*dt must be below 1");
    if (!std::isfinite(phi3) || !std::isfinite(phi4)) throw std::invalid_argument("phases must be finite");
    const auto in_unit = [](double e) { return e >= 0.0 && e <= 1.0; };
    if (!in_unit(eta3)) throw std::invalid_argument("eta3 must lie in [0, 1]");
    if (!in_unit(eta4)) throw std::invalid_argument("eta4 must lie in [0, 1]");
    return eps() <= 0.1;
}

JointOperator build_joint_matrix(const MeasurementSetup& setup) {
    setup.validate();
    FockSpace space(2, 2);
    const double eps = setup.eps();
    const double r2 = std::sqrt(0.5);
    const Eigen::MatrixXcd c3 = std::polar(1.0, setup.phi3) * space.creation(0);
    const Eigen::MatrixXcd c4 = std::polar(1.0, setup.phi4) * space.creation(1);
    const Eigen::MatrixXcd a1 = r2 * (c3 + c4);
    const Eigen::MatrixXcd a2 = r2 * (c3 - c4);
    const Eigen::MatrixXcd id = space.identity();
    const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(space.dim(), space.dim());

    JointOperator j{space, {}};
    for (auto& row : j.blocks) row.fill(zero);
    j.blocks[kEE][kEE] = (1.0 - eps) * id;
    j.blocks[kEG][kEE] = std::sqrt(eps * (1.0 - eps)) * a2;
    j.blocks[kEG][kEG] = std::sqrt(1.0 - eps) * id;
    j.blocks[kGE][kEE] = std::sqrt(eps * (1.0 - eps)) * a1;
    j.blocks[kGE][kGE] = std::sqrt(1.0 - eps) * id;
    j.blocks[kGG][kEE] = eps * a1 * a2;
    j.blocks[kGG][kEG] = std::sqrt(eps) * a1;
    j.blocks[kGG][kGE] = std::sqrt(eps) * a2;
    j.blocks[kGG][kGG] = id;
    check_vacuum_columns(j);
    return j;
}

JointOperator apply_loss_splitters(const JointOperator& j, const MeasurementSetup& setup) {
    setup.validate();
    require_two_modes(j, "apply_loss_splitters");
    FockSpace four(4, 2);
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(4, 4);
    const std::array<double, 2> eta{setup.eta3, setup.eta4};
    for (int k = 0; k < 2; ++k) {
        const double s = std::sqrt(eta[k]);
        const double l = std::sqrt(1.0 - eta[k]);
        t(k, k) = s;
        t(k + 2, k) = l;
        t(k, k + 2) = -l;
        t(k + 2, k + 2) = s;
    }
    const Eigen::MatrixXcd u = passive_unitary(four, t);
    JointOperator out{four, {}};
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            out.blocks[r][c] = u * embed_signal_operator(j.space, four, j.blocks[r][c]) * u.adjoint();
        }
    }
    check_vacuum_columns(out);
    return out;
}

Mat4 KrausSet::completeness() const {
    Mat4 s = Mat4::Zero();
    for (const auto& g : groups) s += g.effect;
    return s;
}

const KrausGroup& KrausSet::group(const JumpOutcome& signal) const {
    for (const auto& g : groups) {
        if (g.signal == signal) return g;
    }
    throw std::out_of_range("KrausSet::group: no such outcome");
}

double fock_wavefunction(int n, double x) {
    if (n < 0) throw std::invalid_argument("fock_wavefunction: negative photon number");
    // Normalized Hermite recursion: h_{k+1} = sqrt(2/(k+1)) x h_k - sqrt(k/(k+1)) h_{k-1}.
    double prev = 0.0;
    double cur = 1.0;
    for (int k = 0; k < n; ++k) {
        const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x) * cur;
}

FockKrausTable::FockKrausTable(const JointOperator& j)
    : has_loss_(j.space.n_modes() == 4), signal_states_(pairs_up_to(2)) {
    if (j.space.n_modes() != 2 && j.space.n_modes() != 4) {
        throw std::invalid_argument("FockKrausTable: expected two or four modes");
    }
    lost_states_ = has_loss_ ? pairs_up_to(2) : std::vector<JumpOutcome>{{0, 0}};
    const int vac = j.space.vacuum_index();
    ops_.assign(signal_states_.size(), std::vector<Mat4>(lost_states_.size(), Mat4::Zero()));
    for (std::size_t s = 0; s < signal_states_.size(); ++s) {
        for (std::size_t l = 0; l < lost_states_.size(); ++l) {
            const auto& sig = signal_states_[s];
            const auto& lost = lost_states_[l];
            const int idx = has_loss_ ? j.space.index_of({sig.n3, sig.n4, lost.n3, lost.n4})
                                      : j.space.index_of({sig.n3, sig.n4});
            if (idx < 0) continue;
            for (int r = 0; r < 4; ++r) {
                for (int c = 0; c < 4; ++c) ops_[s][l](r, c) = j.blocks[r][c](idx, vac);
            }
        }
    }
    // A photon pair is only ever created in one port, so coincidences between
    // ports 3 and 4 carry no amplitude. The outcome sets below rely on it.
    for (std::size_t s = 0; s < signal_states_.size(); ++s) {
        for (std::size_t l = 0; l < lost_states_.size(); ++l) {
            const bool split = signal_states_[s] == JumpOutcome{1, 1} || lost_states_[l] == JumpOutcome{1, 1};
            if (split && ops_[s][l].cwiseAbs().maxCoeff() > kAmplitudeTol) {
                throw std::logic_error("FockKrausTable: unexpected cross-port coincidence amplitude");
            }
        }
    }
}

Mat4 FockKrausTable::fock(const JumpOutcome& signal, const JumpOutcome& lost) const {
    const auto s = std::find(signal_states_.begin(), signal_states_.end(), signal);
    const auto l = std::find(lost_states_.begin(), lost_states_.end(), lost);
    if (s == signal_states_.end() || l == lost_states_.end()) return Mat4::Zero();
    return ops_[s - signal_states_.begin()][l - lost_states_.begin()];
}

KrausGroup FockKrausTable::quadrature(double x, double y) const {
    std::array<double, 3> px{};
    std::array<double, 3> py{};
    for (int n = 0; n < 3; ++n) {
        px[n] = fock_wavefunction(n, x);
        py[n] = fock_wavefunction(n, y);
    }
    std::vector<KrausTerm> terms;
    for (std::size_t l = 0; l < lost_states_.size(); ++l) {
        if (lost_states_[l] == JumpOutcome{1, 1}) continue;
        Mat4 op = Mat4::Zero();
        for (std::size_t s = 0; s < signal_states_.size(); ++s) {
            const auto& sig = signal_states_[s];
            op += (px[sig.n3] * py[sig.n4]) * ops_[s][l];
        }
        terms.push_back({lost_states_[l], op});
    }
    // Quadratures are continuous, so there is no discrete signal label.
    return make_group(JumpOutcome{-1, -1}, std::move(terms));
}

KrausSet extract_pd_kraus(const JointOperator& j) {
    require_two_modes(j, "extract_pd_kraus");
    const FockKrausTable table(j);
    KrausSet set;
    for (const auto& o : jump_outcomes()) {
        set.groups.push_back(make_group(o, {{JumpOutcome{0, 0}, table.fock(o, {0, 0})}}));
    }
    return set;
}

HomodyneKraus extract_hom_kraus(const JointOperator& j, double x, double y) {
    require_two_modes(j, "extract_hom_kraus");
    const FockKrausTable table(j);
    const double weight = std::exp(-0.5 * (x * x + y * y)) / std::sqrt(std::numbers::pi);
    return {table.quadrature(x, y).terms.front().op, weight};
}

KrausGroup extract_lossy_kraus(const JointOperator& j, const JumpOutcome& signal) {
    const FockKrausTable table(j);
    std::vector<KrausTerm> terms;
    for (const auto& lost : jump_outcomes()) {
        if (signal.total() + lost.total() > 2) continue;
        if (!table.has_loss_modes() && lost.total() > 0) continue;
        terms.push_back({lost, table.fock(signal, lost)});
    }
    return make_group(signal, std::move(terms));
}

KrausGroup extract_lossy_kraus(const JointOperator& j, double x, double y) {
    return FockKrausTable(j).quadrature(x, y);
}

KrausSet build_pd_kraus(const MeasurementSetup& setup) {
    const JointOperator ideal = build_joint_matrix(setup);
    if (setup.lossless()) return extract_pd_kraus(ideal);
    const JointOperator lossy = apply_loss_splitters(ideal, setup);
    KrausSet set;
    for (const auto& o : jump_outcomes()) set.groups.push_back(extract_lossy_kraus(lossy, o));
    return set;
}

}  // namespace entcycle
