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
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "entcycle/dynmaps.hpp"
#include "entcycle/ensemble.hpp"

namespace entcycle::cli {

/// Output directory or file could not be written.
class OutputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct RunManifest {
    nlohmann::json config;
    std::string version;
    std::uint64_t master_seed = 0;
    double wall_seconds = 0.0;
    std::vector<std::string> outputs;  // paths relative to the output directory
};

/// Version string with the git description baked in at configure time.
std::string version_string();

/// Formats a finite value with 12 significant digits. Throws
/// std::domain_error for NaN or infinity so no CSV ever carries them.
std::string format_number(double v);

void write_ensemble_csv(const std::filesystem::path& path, const EnsembleStats& stats);
void write_curves_csv(const std::filesystem::path& path, const CurveTable& curves);
void write_trajectory_csv(const std::filesystem::path& path, const TrajectoryRecord& rec);
void write_histogram_csv(const std::filesystem::path& path, const EnsembleStats& stats, const ElementHistogram& h);
void write_cobweb_csv(const std::filesystem::path& path, const CobwebSeries& series);
void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

/// Writes ensemble.csv, curves.csv, the requested traj_<k>.csv files and any
/// element histograms, then manifest.json listing all of them. Returns the
/// manifest as written. Throws OutputError when out_dir is unusable.
RunManifest emit_results(const EnsembleStats& stats, const CurveTable& curves, RunManifest manifest,
                         const std::filesystem::path& out_dir, int dump_trajectories);

/// Creates the directory (and parents). Throws OutputError.
void ensure_directory(const std::filesystem::path& dir);

}  // namespace entcycle::cli
