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

#include "entcycle/cli/app.hpp"

#include <chrono>
#include <cstdint>
#include <optional>

#include <CLI11.hpp>

#include "entcycle/cli/recipes.hpp"
#include "entcycle/dynmaps.hpp"

namespace entcycle::cli {

namespace {

using nlohmann::json;

constexpr const char* kUsage =
    "usage: entcycle run --scheme {pd,homodyne} [options]\n"
    "       entcycle repro <figure> [--out DIR] [--n-traj N] [--seed S] [--threads T]\n"
    "\n"
    "run options (a --config JSON file may supply the same keys without dashes;\n"
    "flags override the file):\n"
    "  --scheme {pd,homodyne}            detection scheme (required)\n"
    "  --feedback {none,recycle,mw,mw-flips}\n"
    "  --eta3 X, --eta4 X                detection efficiencies in [0,1]\n"
    "  --dt X                            step in units of T1 (default 0.01)\n"
    "  --t-max X                         duration in units of T1 (default 10)\n"
    "  --n-traj N                        trajectories (default 1000)\n"
    "  --seed S                          master seed (default 12345)\n"
    "  --flip-period N                   steps between double flips (default 2)\n"
    "  --t-activate X                    no double flips before this time (default 0)\n"
    "  --record-elements                 write density-matrix element histograms\n"
    "  --record-stride N                 record every N steps (default 1)\n"
    "  --dump-trajectories N             write traj_<k>.csv for the first N trajectories\n"
    "  --hom-sampling {gaussian,exact}   homodyne readout sampling (default gaussian)\n"
    "  --phi3 X, --phi4 X                beamsplitter phases (homodyne needs 0 and pi/2)\n"
    "  --threads N                       worker threads, 0 = all cores (default 0)\n"
    "  --out DIR                         output directory (default out)\n"
    "\n"
    "exit codes: 0 success, 2 configuration error, 3 runtime failure\n";

std::vector<std::string> reversed(const std::vector<std::string>& args) { return {args.rbegin(), args.rend()}; }

void parse_or_throw(CLI::App& app, const std::vector<std::string>& args) {
    try {
        std::vector<std::string> rev = reversed(args);
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        throw ConfigError(std::string("bad arguments: ") + e.what());
    }
}

std::string recipe_list() {
    std::string s;
    for (const auto& r : figure_recipes()) s += "  " + r.name + "  " + r.summary + "\n";
    return s;
}

int do_repro(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app("repro");
    std::string figure;
    std::string out_dir;
    std::optional<int> n_traj;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    app.add_option("figure", figure)->required();
    app.add_option("--out", out_dir);
    app.add_option("--n-traj", n_traj);
    app.add_option("--seed", seed);
    app.add_option("--threads", threads);
    parse_or_throw(app, args);
    const Recipe& recipe = find_recipe(figure);
    if (n_traj && *n_traj < 1) throw ConfigError("n-traj must be at least 1");
    if (threads && *threads < 0) throw ConfigError("threads must be non-negative");
    if (out_dir.empty()) out_dir = "repro_out/" + figure;
    const auto files = run_recipe(recipe, out_dir, {n_traj, seed, threads});
    out << "wrote " << files.size() << " files under " << out_dir << "\n";
    return kExitOk;
}

int do_run(const std::vector<std::string>& args, std::ostream& out) {
    const RunOptions o = parse_run_args(args);
    const RunManifest m = execute_run(o);
    out << "wrote " << m.outputs.size() << " files to " << o.out_dir << " in " << m.wall_seconds << " s\n";
    return kExitOk;
}

}  // namespace

RunOptions parse_run_args(const std::vector<std::string>& args) {
    CLI::App app("run");
    std::string config_path;
    std::string scheme, feedback, out_dir, sampling;
    double eta3 = 0, eta4 = 0, dt = 0, t_max = 0, t_activate = 0, phi3 = 0, phi4 = 0;
    long long n_traj = 0, flip_period = 0, threads = 0, record_stride = 0, dump = 0;
    std::uint64_t seed = 0;
    bool record_elements = false;

    app.add_option("--config", config_path);
    // Each entry: flag name, CLI11 option, and how to store it in the JSON overlay.
    std::vector<std::pair<CLI::Option*, std::function<void(json&)>>> flags;
    auto str = [&](const char* name, std::string& v) {
        flags.emplace_back(app.add_option(std::string("--") + name, v), [name, &v](json& j) { j[name] = v; });
    };
    auto num = [&](const char* name, double& v) {
        flags.emplace_back(app.add_option(std::string("--") + name, v), [name, &v](json& j) { j[name] = v; });
    };
    auto integer = [&](const char* name, long long& v) {
        flags.emplace_back(app.add_option(std::string("--") + name, v), [name, &v](json& j) { j[name] = v; });
    };
    str("scheme", scheme);
    str("feedback", feedback);
    str("out", out_dir);
    str("hom-sampling", sampling);
    num("eta3", eta3);
    num("eta4", eta4);
    num("dt", dt);
    num("t-max", t_max);
    num("t-activate", t_activate);
    num("phi3", phi3);
    num("phi4", phi4);
    integer("n-traj", n_traj);
    integer("flip-period", flip_period);
    integer("threads", threads);
    integer("record-stride", record_stride);
    integer("dump-trajectories", dump);
    flags.emplace_back(app.add_option("--seed", seed), [&seed](json& j) { j["seed"] = seed; });
    flags.emplace_back(app.add_flag("--record-elements", record_elements),
                       [&record_elements](json& j) { j["record-elements"] = record_elements; });
    parse_or_throw(app, args);

    json j = config_path.empty() ? json::object() : read_config_file(config_path);
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    for (const auto& [opt, store] : flags) {
        if (opt->count() > 0) store(j);
    }
    return options_from_json(j);
}

RunManifest execute_run(const RunOptions& o) {
    const auto start = std::chrono::steady_clock::now();
    const EnsembleStats stats = run_ensemble(o.sim);
    const double eta = 0.5 * (o.sim.setup.eta3 + o.sim.setup.eta4);
    const CurveTable curves = analytic_curves(stats.times, o.sim.setup.gamma, eta);
    RunManifest m;
    m.config = options_to_json(o);
    m.version = version_string();
    m.master_seed = o.sim.master_seed;
    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return emit_results(stats, curves, std::move(m), o.out_dir, o.dump_trajectories);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (args.empty()) {
        err << kUsage;
        return kExitConfig;
    }
    const std::string& cmd = args.front();
    const std::vector<std::string> rest(args.begin() + 1, args.end());
    try {
        if (cmd == "-h" || cmd == "--help" || cmd == "help") {
            out << kUsage << "\nfigures:\n" << recipe_list();
            return kExitOk;
        }
        if (cmd == "--version") {
            out << "entcycle " << version_string() << "\n";
            return kExitOk;
        }
        if (cmd == "run") return do_run(rest, out);
        if (cmd == "repro") return do_repro(rest, out);
        err << "unknown command '" << cmd << "'\n" << kUsage;
        return kExitConfig;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const OutputError& e) {
        err << "output error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        err << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace entcycle::cli
