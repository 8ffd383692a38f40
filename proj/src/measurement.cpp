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

#include "entcycle/measurement.hpp"

#include <numbers>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

namespace entcycle {

namespace {

// Upper bound on p(X, Y) / g(X, Y) for the standard-normal proposal g. The
// homodyne polynomial parts obey sum_n |h_n|^2 = 2 + 2 r^4, which with
// Cauchy-Schwarz bounds the ratio by 4 (1 + u^2) exp(-u / 2), u = r^2. Its
// maximum at u = 2 + sqrt(3) is about 9.2397.
constexpr double kRejectionBound = 9.25;
constexpr int kMaxRejections = 100000;

struct Observables {
    Mat4 sx_sum;   // sigma_x^A + sigma_x^B
    Mat4 sy_diff;  // sigma_y^A - sigma_y^B
};

const Observables& observables() {
    static const Observables obs = [] {
        const Mat2 id = Mat2::Identity();
        return Observables{kron(pauli_x(), id) + kron(id, pauli_x()), kron(pauli_y(), id) - kron(id, pauli_y())};
    }();
    return obs;
}

Mat4 hermitize(const Mat4& m) { return 0.5 * (m + m.adjoint()); }

void check_total(double total) {
    if (!(std::abs(total - 1.0) <= kProbabilityDriftTol)) {
        throw StepAbort("outcome probabilities sum to " + std::to_string(total));
    }
}

std::size_t pick(const std::vector<double>& probs, double u) {
    double acc = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] > 0.0) last_nonzero = i;
        acc += probs[i];
        if (u < acc) return i;
    }
    return last_nonzero;
}

const KrausTerm& single_term(const KrausGroup& g) {
    if (g.terms.size() != 1) {
        throw std::invalid_argument("pure-state update needs one Kraus operator per outcome");
    }
    return g.terms.front();
}

double expectation(const Mat4& op, const Vec4& v) { return (v.adjoint() * op * v)(0, 0).real(); }

template <class State>
HomodyneReadout draw_readout(const State& s, const HomodyneModel& model, Rng& rng, HomodyneSampling sampling) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double dt = model.setup().dt;
    if (sampling == HomodyneSampling::Gaussian) {
        const HomodyneReadout mean = model.readout_mean(s);
        const double sd = 1.0 / std::sqrt(dt);
        const double n3 = normal(rng);
        const double n4 = normal(rng);
        return {mean.r3 + sd * n3, mean.r4 + sd * n4};
    }
    DensityMatrix4 rho;
    if constexpr (std::is_same_v<State, TwoQubitPure>) {
        rho = DensityMatrix4::from_pure(s);
    } else {
        rho = s;
    }
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        const double x = normal(rng);
        const double y = normal(rng);
        const double proposal = std::exp(-0.5 * (x * x + y * y)) / (2.0 * std::numbers::pi);
        const double ratio = model.povm_density(rho, x, y) / (kRejectionBound * proposal);
        if (ratio > 1.0) throw std::logic_error("homodyne rejection bound violated");
        if (uniform01(rng) < ratio) return HomodyneReadout::from_quadratures(x, y, dt);
    }
    throw StepAbort("homodyne rejection sampler did not accept");
}

}  // namespace

Mat4 sandwich(const KrausGroup& group, const Mat4& rho) {
    Mat4 out = Mat4::Zero();
    for (const auto& t : group.terms) out += t.op * rho * t.op.adjoint();
    return out;
}

PdStepPure pd_step(const TwoQubitPure& state, const KrausSet& kraus, Rng& rng) {
    const Vec4& v = state.amplitudes();
    std::vector<double> probs;
    double total = 0.0;
    for (const auto& g : kraus.groups) {
        single_term(g);
        probs.push_back(std::max(0.0, expectation(g.effect, v)));
        total += probs.back();
    }
    check_total(total);
    const std::size_t k = pick(probs, uniform01(rng) * total);
    const KrausGroup& g = kraus.groups[k];
    const Vec4 out = g.terms.front().op * v;
    return {g.signal, TwoQubitPure(out / std::sqrt(probs[k])), probs[k]};
}

PdStepMixed pd_step(const DensityMatrix4& rho, const KrausSet& kraus, Rng& rng) {
    std::vector<double> probs;
    double total = 0.0;
    for (const auto& g : kraus.groups) {
        probs.push_back(std::max(0.0, (g.effect * rho.matrix()).trace().real()));
        total += probs.back();
    }
    check_total(total);
    const std::size_t k = pick(probs, uniform01(rng) * total);
    const KrausGroup& g = kraus.groups[k];
    const Mat4 out = hermitize(sandwich(g, rho.matrix())) / probs[k];
    return {g.signal, DensityMatrix4::unchecked(out), probs[k]};
}

TwoQubitPure apply_pd_outcome(const TwoQubitPure& state, const KrausSet& kraus, const JumpOutcome& outcome) {
    const Vec4 out = single_term(kraus.group(outcome)).op * state.amplitudes();
    if (!(out.squaredNorm() > 0.0)) throw std::domain_error("outcome has zero probability");
    return TwoQubitPure(out).normalized();
}

DensityMatrix4 apply_pd_outcome(const DensityMatrix4& rho, const KrausSet& kraus, const JumpOutcome& outcome) {
    const Mat4 out = hermitize(sandwich(kraus.group(outcome), rho.matrix()));
    if (!(out.trace().real() > 0.0)) throw std::domain_error("outcome has zero probability");
    return DensityMatrix4::unchecked(out).normalized();
}

HomodyneModel::HomodyneModel(const MeasurementSetup& setup)
    : setup_(setup),
      table_(setup.lossless() ? build_joint_matrix(setup) : apply_loss_splitters(build_joint_matrix(setup), setup)) {}

KrausGroup HomodyneModel::kraus_at(const HomodyneReadout& r) const {
    return table_.quadrature(r.x(setup_.dt), r.y(setup_.dt));
}

HomodyneReadout HomodyneModel::readout_mean(const TwoQubitPure& s) const {
    const auto& obs = observables();
    const double k = std::sqrt(setup_.gamma / 2.0);
    const Vec4& v = s.amplitudes();
    return {k * std::sqrt(setup_.eta3) * expectation(obs.sx_sum, v),
            k * std::sqrt(setup_.eta4) * expectation(obs.sy_diff, v)};
}

HomodyneReadout HomodyneModel::readout_mean(const DensityMatrix4& rho) const {
    const auto& obs = observables();
    const double k = std::sqrt(setup_.gamma / 2.0);
    return {k * std::sqrt(setup_.eta3) * (obs.sx_sum * rho.matrix()).trace().real(),
            k * std::sqrt(setup_.eta4) * (obs.sy_diff * rho.matrix()).trace().real()};
}

double HomodyneModel::povm_density(const DensityMatrix4& rho, double x, double y) const {
    return (table_.quadrature(x, y).effect * rho.matrix()).trace().real();
}

HomStepPure hom_step(const TwoQubitPure& state, const HomodyneModel& model, Rng& rng, HomodyneSampling sampling) {
    if (!model.setup().lossless()) throw std::invalid_argument("pure homodyne step needs unit efficiency");
    const HomodyneReadout r = draw_readout(state, model, rng, sampling);
    const Vec4 out = single_term(model.kraus_at(r)).op * state.amplitudes();
    const double density = out.squaredNorm();
    if (!(density > 0.0) || !std::isfinite(density)) throw StepAbort("homodyne update produced a null state");
    return {r, TwoQubitPure(out / std::sqrt(density)), density};
}

HomStepMixed hom_step(const DensityMatrix4& rho, const HomodyneModel& model, Rng& rng, HomodyneSampling sampling) {
    const HomodyneReadout r = draw_readout(rho, model, rng, sampling);
    const Mat4 out = hermitize(sandwich(model.kraus_at(r), rho.matrix()));
    const double density = out.trace().real();
    if (!(density > 0.0) || !std::isfinite(density)) throw StepAbort("homodyne update produced a null state");
    return {r, DensityMatrix4::unchecked(out / density), density};
}

TwoQubitPure apply_hom_readout(const TwoQubitPure& state, const HomodyneModel& model, const HomodyneReadout& r) {
    return TwoQubitPure(single_term(model.kraus_at(r)).op * state.amplitudes()).normalized();
}

DensityMatrix4 apply_hom_readout(const DensityMatrix4& rho, const HomodyneModel& model, const HomodyneReadout& r) {
    return DensityMatrix4::unchecked(hermitize(sandwich(model.kraus_at(r), rho.matrix()))).normalized();
}

}  // namespace entcycle
