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

#include "entcycle/ensemble.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>
#include <type_traits>

#include "entcycle/rng.hpp"

namespace entcycle {

namespace {

// Trajectories are grouped in fixed-size blocks so that floating-point
// partial sums never depend on how blocks are spread over threads.
constexpr long kBlockSize = 64;

struct Models {
    KrausSet pd;
    std::optional<HomodyneModel> hom;
};

Models build_models(const SimConfig& cfg) {
    Models m;
    if (cfg.scheme == Scheme::Photodetection) {
        m.pd = build_pd_kraus(cfg.setup);
    } else {
        m.hom.emplace(cfg.setup);
    }
    return m;
}

struct ElementSpec {
    const char* name;
    double lo;
    double hi;
};

constexpr std::array<ElementSpec, 3> kElements{{{"rho00", 0.0, 1.0}, {"rho33", 0.0, 1.0}, {"re_rho03", -0.5, 0.5}}};

double concurrence_of(const TwoQubitPure& s) { return concurrence_pure(s); }
double concurrence_of(const DensityMatrix4& rho) { return concurrence_mixed(rho); }
double purity_of(const TwoQubitPure& s) { return s.norm_squared() * s.norm_squared(); }
double purity_of(const DensityMatrix4& rho) { return purity(rho); }

std::array<double, 3> elements_of(const TwoQubitPure& s) {
    return {std::norm(s[kEE]), std::norm(s[kGG]), (s[kEE] * std::conj(s[kGG])).real()};
}
std::array<double, 3> elements_of(const DensityMatrix4& rho) {
    return {rho(kEE, kEE).real(), rho(kGG, kGG).real(), rho(kEE, kGG).real()};
}

template <class State>
State initial_state(const SimConfig& cfg) {
    if constexpr (std::is_same_v<State, TwoQubitPure>) {
        return cfg.initial.normalized();
    } else {
        return DensityMatrix4::from_pure(cfg.initial.normalized());
    }
}

template <class State>
void record(TrajectoryRecord& rec, double t, const State& s, bool elements) {
    rec.times.push_back(t);
    rec.concurrence.push_back(concurrence_of(s));
    rec.purity.push_back(purity_of(s));
    if (elements) {
        const auto e = elements_of(s);
        rec.rho00.push_back(e[0]);
        rec.rho33.push_back(e[1]);
        rec.re_rho03.push_back(e[2]);
    }
}

template <class State>
TrajectoryRecord simulate(const SimConfig& cfg, const Models& models, long traj_index, bool log_outcomes) {
    Rng rng = trajectory_rng(cfg.master_seed, static_cast<std::uint64_t>(traj_index));
    const long n = cfg.n_steps();
    const double dt = cfg.setup.dt;
    const FeedbackVariant variant = cfg.policy.variant;
    const LocalOp& f_ab = flip_ops().f_ab;

    TrajectoryRecord rec;
    State state = initial_state<State>(cfg);
    PdPolicyState pd_state;
    record(rec, 0.0, state, cfg.record_elements);

    long k = 0;
    try {
        for (; k < n; ++k) {
            const double t = static_cast<double>(k + 1) * dt;
            if (cfg.scheme == Scheme::Photodetection) {
                auto res = pd_step(state, models.pd, rng);
                state = std::move(res.state_after);
                if (log_outcomes) rec.jumps.push_back(res.outcome);
                if (variant == FeedbackVariant::PdRecycle) {
                    const PdPolicyDecision dec = pd_policy_step(pd_state, res.outcome);
                    if (dec.op) state = dec.op->apply(state);
                    pd_state = dec.next;
                }
            } else {
                auto res = hom_step(state, *models.hom, rng, cfg.sampling);
                if (log_outcomes) rec.readouts.push_back(res.outcome);
                if (variant == FeedbackVariant::HomMW || variant == FeedbackVariant::HomMWFlips) {
                    // The feedback weight comes from the state the readout was taken on.
                    const LocalOp u = mw_unitary(res.outcome, state, cfg.setup);
                    state = u.apply(res.state_after);
                } else {
                    state = std::move(res.state_after);
                }
                if (variant == FeedbackVariant::HomMWFlips && schedule_flip(cfg.policy, k, t)) {
                    state = f_ab.apply(state);
                }
            }
            if ((k + 1) % cfg.record_stride == 0) record(rec, t, state, cfg.record_elements);
        }
    } catch (const StepAbort& e) {
        throw TrajectoryAbort(traj_index, k, e.what());
    } catch (const std::domain_error& e) {
        throw TrajectoryAbort(traj_index, k, e.what());
    }
    return rec;
}

TrajectoryRecord simulate_any(const SimConfig& cfg, const Models& models, long traj_index, bool log_outcomes) {
    if (cfg.setup.lossless()) return simulate<TwoQubitPure>(cfg, models, traj_index, log_outcomes);
    return simulate<DensityMatrix4>(cfg, models, traj_index, log_outcomes);
}

int bin_of(double v, double lo, double hi) {
    const int b = static_cast<int>(std::floor((v - lo) / (hi - lo) * kHistogramBins));
    return std::clamp(b, 0, kHistogramBins - 1);
}

// Type 7 quantile of a sorted sample.
double quantile_sorted(const std::vector<double>& x, double p) {
    const double h = (static_cast<double>(x.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= x.size()) return x.back();
    return x[lo] + (h - static_cast<double>(lo)) * (x[lo + 1] - x[lo]);
}

}  // namespace

long SimConfig::n_steps() const {
    return std::lround(t_max / setup.dt);
}

void SimConfig::validate() const {
    setup.validate();
    policy.validate();
    if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
    const double ratio = t_max / setup.dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
        throw std::invalid_argument("t_max must be an integer multiple of dt");
    }
    if (n_traj < 1) throw std::invalid_argument("n_traj must be at least 1");
    if (record_stride < 1) throw std::invalid_argument("record_stride must be at least 1");
    if (threads < 0) throw std::invalid_argument("threads must be non-negative");
    if (keep_trajectories < 0) throw std::invalid_argument("keep_trajectories must be non-negative");
    const FeedbackVariant v = policy.variant;
    if (scheme == Scheme::Photodetection && v != FeedbackVariant::None && v != FeedbackVariant::PdRecycle) {
        throw std::invalid_argument("photodetection supports feedback none or recycle");
    }
    if (scheme == Scheme::Homodyne && v == FeedbackVariant::PdRecycle) {
        throw std::invalid_argument("homodyne supports feedback none, mw or mw-flips");
    }
    if (scheme == Scheme::Homodyne && (setup.phi3 != 0.0 || setup.phi4 != std::numbers::pi / 2.0)) {
        throw std::invalid_argument("the homodyne readout model assumes phases (0, pi/2)");
    }
}

TrajectoryAbort::TrajectoryAbort(long traj, long step, const std::string& why)
    : std::runtime_error("trajectory " + std::to_string(traj) + " aborted at step " + std::to_string(step) + ": " +
                         why),
      traj_(traj),
      step_(step) {}

TrajectoryRecord run_trajectory(const SimConfig& cfg, long traj_index) {
    cfg.validate();
    return simulate_any(cfg, build_models(cfg), traj_index, cfg.record_outcomes);
}

EnsembleStats run_ensemble(const SimConfig& cfg) {
    cfg.validate();
    const Models models = build_models(cfg);
    const long n_traj = cfg.n_traj;
    const long n_rec = cfg.n_steps() / cfg.record_stride + 1;
    const long n_blocks = (n_traj + kBlockSize - 1) / kBlockSize;

    std::vector<double> c_values(static_cast<std::size_t>(n_rec * n_traj));  // [rec][traj]
    std::vector<double> block_purity(static_cast<std::size_t>(n_blocks * n_rec), 0.0);
    std::vector<double> times;
    std::vector<TrajectoryRecord> kept(static_cast<std::size_t>(std::min<long>(cfg.keep_trajectories, n_traj)));

    unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::thread::hardware_concurrency();
    n_threads = std::clamp<unsigned>(n_threads, 1, static_cast<unsigned>(n_blocks));
    const std::size_t hist_size = cfg.record_elements ? kElements.size() * n_rec * kHistogramBins : 0;
    // Integer counts per thread: summing them is exact in any order.
    std::vector<std::vector<long>> counts(n_threads, std::vector<long>(hist_size, 0));

    std::atomic<long> next_block{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    long first_error_traj = n_traj;
    std::atomic<bool> failed{false};
    std::once_flag times_once;

    auto worker = [&](unsigned tid) {
        for (long b = next_block++; b < n_blocks && !failed; b = next_block++) {
            const long begin = b * kBlockSize;
            const long end = std::min(n_traj, begin + kBlockSize);
            for (long i = begin; i < end; ++i) {
                try {
                    const bool keep = i < static_cast<long>(kept.size());
                    TrajectoryRecord rec = simulate_any(cfg, models, i, keep && cfg.record_outcomes);
                    std::call_once(times_once, [&] { times = rec.times; });
                    for (long r = 0; r < n_rec; ++r) {
                        c_values[static_cast<std::size_t>(r * n_traj + i)] = rec.concurrence[r];
                        block_purity[static_cast<std::size_t>(b * n_rec + r)] += rec.purity[r];
                    }
                    if (cfg.record_elements) {
                        const std::array<const std::vector<double>*, 3> series{&rec.rho00, &rec.rho33, &rec.re_rho03};
                        for (std::size_t e = 0; e < kElements.size(); ++e) {
                            for (long r = 0; r < n_rec; ++r) {
                                const int bin = bin_of((*series[e])[r], kElements[e].lo, kElements[e].hi);
                                ++counts[tid][(e * n_rec + r) * kHistogramBins + bin];
                            }
                        }
                    }
                    if (keep) kept[static_cast<std::size_t>(i)] = std::move(rec);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (i < first_error_traj) {
                        first_error_traj = i;
                        first_error = std::current_exception();
                    }
                    failed = true;
                    return;
                }
            }
        }
    };

    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);

    EnsembleStats out;
    out.n_traj = static_cast<int>(n_traj);
    out.times = times;
    std::vector<double> column(static_cast<std::size_t>(n_traj));
    for (long r = 0; r < n_rec; ++r) {
        const double* col = &c_values[static_cast<std::size_t>(r * n_traj)];
        double sum = 0.0;
        for (long i = 0; i < n_traj; ++i) sum += col[i];
        const double mean = sum / static_cast<double>(n_traj);
        double ss = 0.0;
        for (long i = 0; i < n_traj; ++i) ss += (col[i] - mean) * (col[i] - mean);
        out.mean_c.push_back(mean);
        out.std_c.push_back(n_traj > 1 ? std::sqrt(ss / static_cast<double>(n_traj - 1)) : 0.0);
        double psum = 0.0;
        for (long b = 0; b < n_blocks; ++b) psum += block_purity[static_cast<std::size_t>(b * n_rec + r)];
        out.mean_purity.push_back(psum / static_cast<double>(n_traj));
        column.assign(col, col + n_traj);
        std::sort(column.begin(), column.end());
        out.q05.push_back(quantile_sorted(column, 0.05));
        out.q95.push_back(quantile_sorted(column, 0.95));
    }

    if (cfg.record_elements) {
        for (std::size_t e = 0; e < kElements.size(); ++e) {
            ElementHistogram h;
            h.name = kElements[e].name;
            h.lo = kElements[e].lo;
            h.hi = kElements[e].hi;
            const double width = (h.hi - h.lo) / kHistogramBins;
            for (int bin = 0; bin < kHistogramBins; ++bin) h.bin_centers.push_back(h.lo + (bin + 0.5) * width);
            for (long r = 0; r < n_rec; ++r) {
                std::vector<double> row(kHistogramBins, 0.0);
                for (int bin = 0; bin < kHistogramBins; ++bin) {
                    long total = 0;
                    for (const auto& c : counts) total += c[(e * n_rec + r) * kHistogramBins + bin];
                    row[bin] = static_cast<double>(total) / (static_cast<double>(n_traj) * width);
                }
                h.density.push_back(std::move(row));
            }
            out.histograms.push_back(std::move(h));
        }
    }
    out.trajectories = std::move(kept);
    return out;
}

EnsembleStats element_histograms(const SimConfig& cfg) {
    SimConfig with = cfg;
    with.record_elements = true;
    return run_ensemble(with);
}

const char* to_string(Scheme s) { return s == Scheme::Photodetection ? "pd" : "homodyne"; }

const char* to_string(FeedbackVariant v) {
    switch (v) {
        case FeedbackVariant::None:
            return "none";
        case FeedbackVariant::PdRecycle:
            return "recycle";
        case FeedbackVariant::HomMW:
            return "mw";
        case FeedbackVariant::HomMWFlips:
            return "mw-flips";
    }
    return "unknown";
}

}  // namespace entcycle
