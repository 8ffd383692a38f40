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

#include "entcycle/cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>

#ifndef ENTCYCLE_VERSION
#define ENTCYCLE_VERSION "0.0.0"
#endif
#ifndef ENTCYCLE_GIT_DESCRIBE
#define ENTCYCLE_GIT_DESCRIBE "unknown"
#endif

namespace entcycle::cli {

namespace fs = std::filesystem;

namespace {

class CsvWriter {
   public:
    CsvWriter(const fs::path& path, std::initializer_list<const char*> header) : path_(path), out_(path) {
        if (!out_) throw OutputError("cannot write '" + path.string() + "'");
        bool first = true;
        for (const char* h : header) {
            out_ << (first ? "" : ",") << h;
            first = false;
        }
        out_ << '\n';
    }

    void row(std::initializer_list<double> values) {
        bool first = true;
        for (double v : values) {
            out_ << (first ? "" : ",") << format_number(v);
            first = false;
        }
        out_ << '\n';
    }

    void close() {
        out_.close();
        if (!out_) throw OutputError("failed while writing '" + path_.string() + "'");
    }

   private:
    fs::path path_;
    std::ofstream out_;
};

}  // namespace

std::string version_string() { return std::string(ENTCYCLE_VERSION) + "+" + ENTCYCLE_GIT_DESCRIBE; }

std::string format_number(double v) {
    if (!std::isfinite(v)) throw std::domain_error("refusing to emit a non-finite value");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw OutputError("cannot create output directory '" + dir.string() + "'");
    }
}

void write_ensemble_csv(const fs::path& path, const EnsembleStats& s) {
    CsvWriter w(path, {"t", "mean_C", "std_C", "mean_purity", "q05", "q95"});
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        w.row({s.times[i], s.mean_c[i], s.std_c[i], s.mean_purity[i], s.q05[i], s.q95[i]});
    }
    w.close();
}

void write_curves_csv(const fs::path& path, const CurveTable& c) {
    CsvWriter w(path, {"t", "c_ideal_flip", "c_mw_noflip", "c_flip_theta", "c_max_eta", "c_pd_nofb", "c_hom_nofb"});
    for (std::size_t i = 0; i < c.t.size(); ++i) {
        w.row({c.t[i], c.c_ideal_flip[i], c.c_mw_noflip[i], c.c_flip_theta[i], c.c_max_eta[i], c.c_pd_nofb[i],
               c.c_hom_nofb[i]});
    }
    w.close();
}

void write_trajectory_csv(const fs::path& path, const TrajectoryRecord& rec) {
    CsvWriter w(path, {"t", "C", "purity"});
    for (std::size_t i = 0; i < rec.times.size(); ++i) w.row({rec.times[i], rec.concurrence[i], rec.purity[i]});
    w.close();
}

void write_histogram_csv(const fs::path& path, const EnsembleStats& stats, const ElementHistogram& h) {
    CsvWriter w(path, {"t", "bin_center", "density"});
    for (std::size_t r = 0; r < h.density.size(); ++r) {
        for (std::size_t b = 0; b < h.bin_centers.size(); ++b) w.row({stats.times[r], h.bin_centers[b], h.density[r][b]});
    }
    w.close();
}

void write_cobweb_csv(const fs::path& path, const CobwebSeries& series) {
    CsvWriter w(path, {"kind", "index", "x", "y"});
    // kind 0: iterate pairs (x_k, x_{k+1}); kind 1: sampled map curve.
    for (std::size_t k = 0; k < series.steps.size(); ++k) {
        w.row({0.0, static_cast<double>(k), series.steps[k].first, series.steps[k].second});
    }
    for (std::size_t i = 0; i < series.curve_x.size(); ++i) {
        w.row({1.0, static_cast<double>(i), series.curve_x[i], series.curve_y[i]});
    }
    w.close();
}

void write_manifest(const fs::path& path, const RunManifest& m) {
    nlohmann::json j;
    j["config"] = m.config;
    j["version"] = m.version;
    j["master_seed"] = m.master_seed;
    j["wall_seconds"] = m.wall_seconds;
    j["outputs"] = m.outputs;
    std::ofstream out(path);
    if (!out) throw OutputError("cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
    if (!out) throw OutputError("failed while writing '" + path.string() + "'");
}

RunManifest emit_results(const EnsembleStats& stats, const CurveTable& curves, RunManifest manifest,
                         const fs::path& out_dir, int dump_trajectories) {
    ensure_directory(out_dir);
    write_ensemble_csv(out_dir / "ensemble.csv", stats);
    manifest.outputs.push_back("ensemble.csv");
    write_curves_csv(out_dir / "curves.csv", curves);
    manifest.outputs.push_back("curves.csv");
    const auto n_dump = std::min<std::size_t>(static_cast<std::size_t>(dump_trajectories), stats.trajectories.size());
    for (std::size_t k = 0; k < n_dump; ++k) {
        const std::string name = "traj_" + std::to_string(k) + ".csv";
        write_trajectory_csv(out_dir / name, stats.trajectories[k]);
        manifest.outputs.push_back(name);
    }
    for (const auto& h : stats.histograms) {
        const std::string name = "elements_" + h.name + ".csv";
        write_histogram_csv(out_dir / name, stats, h);
        manifest.outputs.push_back(name);
    }
    manifest.outputs.push_back("manifest.json");
    write_manifest(out_dir / "manifest.json", manifest);
    return manifest;
}

}  // namespace entcycle::cli
