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

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "entcycle/ensemble.hpp"

namespace entcycle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

/// Any problem with flags or the config file. Always maps to kExitConfig.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    SimConfig sim;
    std::string out_dir = "out";
    /// Number of trajectories written as traj_<k>.csv.
    int dump_trajectories = 0;
};

/// Builds options from a flat JSON object whose keys are the long flag names
/// without the leading dashes. Every key except "scheme" is optional.
/// Throws ConfigError on unknown keys, wrong types, out-of-range values or a
/// missing scheme.
RunOptions options_from_json(const nlohmann::json& j);

/// Full echo of every setting; options_from_json(options_to_json(o)) == o.
nlohmann::json options_to_json(const RunOptions& o);

/// Reads a JSON config file into a flat object. Throws ConfigError.
nlohmann::json read_config_file(const std::string& path);

}  // namespace entcycle::cli
