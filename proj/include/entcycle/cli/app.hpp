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

#include <ostream>
#include <string>
#include <vector>

#include "entcycle/cli/config.hpp"
#include "entcycle/cli/output.hpp"

namespace entcycle::cli {

/// Parses `run` flags (and an optional --config file) into options. Flags
/// override file values. Throws ConfigError.
RunOptions parse_run_args(const std::vector<std::string>& args);

/// Runs the ensemble described by the options and writes all outputs.
RunManifest execute_run(const RunOptions& options);

/// Entry point shared by the executable and the tests. args excludes the
/// program name. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entcycle::cli
