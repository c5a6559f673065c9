// Copyright 2026 The envwalk Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Command-line driver. Subcommands: simulate, mixing-sweep,
 * saturation-sweep, classical. Every CSV is written together with a JSON
 * manifest that can be passed back through --config to rerun it.
 */
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace envwalk::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitNumerical = 3,
    kExitIo = 4,
};

inline constexpr const char *kOutputDirEnv = "ENVWALK_OUTPUT_DIR";

/// `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Shortest round-trip text with 17 significant digits, locale-independent.
std::string format_double(double v);

/// Directory from ENVWALK_OUTPUT_DIR, or the working directory.
std::filesystem::path default_output_dir();

/// foo/bar.csv -> foo/bar.manifest.json
std::filesystem::path manifest_path_for(const std::filesystem::path &csv);

} // namespace envwalk::cli
