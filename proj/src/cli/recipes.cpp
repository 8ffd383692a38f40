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

#include "entcycle/cli/recipes.hpp"

#include <algorithm>
#include <cmath>

#include "entcycle/cli/app.hpp"
#include "entcycle/cli/config.hpp"
#include "entcycle/cli/output.hpp"
#include "entcycle/dynmaps.hpp"

namespace entcycle::cli {

namespace {

constexpr int kDefaultTraj = 500;
constexpr double kPdTmax = 10.0;
constexpr double kHomTmax = 8.0;
constexpr double kCoarseDt = 0.01;
constexpr double kFineDt = 1e-3;

SimConfig pd_run(FeedbackVariant v, double eta) {
    SimConfig c;
    c.scheme = Scheme::Photodetection;
    c.policy.variant = v;
    c.setup.dt = kCoarseDt;
    c.setup.eta3 = c.setup.eta4 = eta;
    c.t_max = kPdTmax;
    c.n_traj = kDefaultTraj;
    c.keep_trajectories = 10;
    return c;
}

SimConfig hom_run(FeedbackVariant v, double eta, int flip_period, double t_activate, double dt = kCoarseDt) {
    SimConfig c;
    c.scheme = Scheme::Homodyne;
    c.policy.variant = v;
    c.policy.flip_period = flip_period;
    c.policy.t_activate = t_activate;
    c.setup.dt = dt;
    c.setup.eta3 = c.setup.eta4 = eta;
    c.t_max = kHomTmax;
    c.n_traj = kDefaultTraj;
    // Keep about 800 rows whatever the step.
    c.record_stride = static_cast<int>(std::lround(kCoarseDt / dt));
    c.keep_trajectories = 10;
    return c;
}

SimConfig with_elements(SimConfig c) {
    c.record_elements = true;
    return c;
}

std::vector<Recipe> make_table() {
    using V = FeedbackVariant;
    const double te = peak_time(1.0);
    std::vector<Recipe> t;
    t.push_back({"fig3-pd", "photodetection recycling, ideal detection, with no-feedback control",
                 {{"recycle", pd_run(V::PdRecycle, 1.0)}, {"nofb", pd_run(V::None, 1.0)}}, {}});
    t.push_back({"fig3-hom-a", "homodyne feedback with double flips every other step from t = 0",
                 {{"mw-flips", hom_run(V::HomMWFlips, 1.0, 2, 0.0)}}, {}});
    t.push_back({"fig3-hom-b", "homodyne feedback with double flips every other step after the peak time",
                 {{"mw-flips", hom_run(V::HomMWFlips, 1.0, 2, te)}}, {}});
    t.push_back({"fig4", "cobwebs of the flip map and the two-step concurrence map",
                 {},
                 {{"a_eps0.1", CobwebForm::AmplitudeFlipMap, 0.1, 60},
                  {"c_eps0.1", CobwebForm::ConcurrenceTwoStep, 0.1, 30},
                  {"a_eps0.02", CobwebForm::AmplitudeFlipMap, 0.02, 300},
                  {"c_eps0.02", CobwebForm::ConcurrenceTwoStep, 0.02, 150}}});
    const std::vector<std::pair<std::string, double>> pd_eta{{"fig5a", 0.98}, {"fig5b", 0.90}, {"fig5c", 0.50}};
    for (const auto& [name, eta] : pd_eta) {
        t.push_back({name, "inefficient photodetection recycling with no-feedback control",
                     {{"recycle", pd_run(V::PdRecycle, eta)}, {"nofb", pd_run(V::None, eta)}}, {}});
    }
    const std::vector<std::pair<std::string, double>> hom_eta{{"fig6a", 0.98}, {"fig6c", 0.95}, {"fig6e", 0.75}};
    const std::vector<std::string> flip_names{"fig6b", "fig6d", "fig6f"};
    for (std::size_t i = 0; i < hom_eta.size(); ++i) {
        const double eta = hom_eta[i].second;
        t.push_back({hom_eta[i].first, "inefficient homodyne feedback without flips", {{"mw", hom_run(V::HomMW, eta, 1, 0.0)}}, {}});
        t.push_back({flip_names[i], "inefficient homodyne feedback with double flips every step",
                     {{"mw-flips", hom_run(V::HomMWFlips, eta, 1, 0.0)}}, {}});
    }
    t.push_back({"fig7", "homodyne feedback with flips at the finer step, both activation choices",
                 {{"after-te", hom_run(V::HomMWFlips, 1.0, 2, te, kFineDt)},
                  {"from-start", hom_run(V::HomMWFlips, 1.0, 2, 0.0, kFineDt)}},
                 {}});
    t.push_back({"fig8", "density-matrix element histograms for both flip activation choices",
                 {{"after-te", with_elements(hom_run(V::HomMWFlips, 1.0, 2, te))},
                  {"from-start", with_elements(hom_run(V::HomMWFlips, 1.0, 2, 0.0))}},
                 {}});
    return t;
}

CobwebSeries make_cobweb(const CobwebSpec& spec) {
    const double eps = spec.eps;
    if (spec.form == CobwebForm::AmplitudeFlipMap) {
        return cobweb([eps](double a) { return flip_a_map(a, eps); }, 1.0, spec.n_iter, -1.0, 1.0);
    }
    return cobweb([eps](double c) { return concurrence_two_step_map(c, eps); }, 0.0, spec.n_iter, 0.0, 1.0);
}

}  // namespace

const std::vector<Recipe>& figure_recipes() {
    static const std::vector<Recipe> table = make_table();
    return table;
}

const Recipe& find_recipe(const std::string& name) {
    for (const auto& r : figure_recipes()) {
        if (r.name == name) return r;
    }
    throw ConfigError("unknown figure '" + name + "'");
}

std::vector<std::filesystem::path> run_recipe(const Recipe& recipe, const std::filesystem::path& out_dir,
                                              const RecipeOverrides& overrides) {
    std::vector<std::filesystem::path> written;
    ensure_directory(out_dir);
    for (const auto& run : recipe.runs) {
        RunOptions o;
        o.sim = run.sim;
        if (overrides.n_traj) o.sim.n_traj = *overrides.n_traj;
        if (overrides.seed) o.sim.master_seed = *overrides.seed;
        if (overrides.threads) o.sim.threads = *overrides.threads;
        o.sim.keep_trajectories = std::min(o.sim.keep_trajectories, o.sim.n_traj);
        o.dump_trajectories = o.sim.keep_trajectories;
        o.out_dir = (out_dir / run.label).string();
        try {
            o.sim.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("invalid override: ") + e.what());
        }
        const RunManifest m = execute_run(o);
        for (const auto& f : m.outputs) written.push_back(out_dir / run.label / f);
    }
    for (const auto& spec : recipe.cobwebs) {
        const auto path = out_dir / ("cobweb_" + spec.label + ".csv");
        write_cobweb_csv(path, make_cobweb(spec));
        written.push_back(path);
    }
    return written;
}

}  // namespace entcycle::cli
