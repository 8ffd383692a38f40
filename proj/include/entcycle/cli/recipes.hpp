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
#include <optional>
#include <string>
#include <vector>

#include "entcycle/ensemble.hpp"

namespace entcycle::cli {

struct RecipeRun {
    std::string label;  // subdirectory name
    SimConfig sim;
};

enum class CobwebForm { AmplitudeFlipMap, ConcurrenceTwoStep };

struct CobwebSpec {
    std::string label;
    CobwebForm form;
    double eps;
    int n_iter;
};

struct Recipe {
    std::string name;
    std::string summary;
    std::vector<RecipeRun> runs;
    std::vector<CobwebSpec> cobwebs;
};

/// Every figure preset; all parameters live in this one table.
const std::vector<Recipe>& figure_recipes();

/// Throws ConfigError for an unknown name.
const Recipe& find_recipe(const std::string& name);

struct RecipeOverrides {
    std::optional<int> n_traj;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
};

/// Runs a preset, writing each ensemble run to out_dir/<label>/ and each
/// cobweb to out_dir/cobweb_<label>.csv. Returns the files written.
std::vector<std::filesystem::path> run_recipe(const Recipe& recipe, const std::filesystem::path& out_dir,
                                              const RecipeOverrides& overrides);

}  // namespace entcycle::cli
