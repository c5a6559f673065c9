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
 * State checkpoints: one line of JSON header
 * {"d_S", "d_E", "layout": "e+d_E*(c+2s)", "encoding", "count"} followed by
 * `count` interleaved (re, im) pairs as little-endian IEEE-754 doubles.
 */
#pragma once

#include <filesystem>
#include <iosfwd>

#include "envwalk/walk.hpp"

namespace envwalk {

inline constexpr const char *kSnapshotLayout = "e+d_E*(c+2s)";

void write_snapshot(const PureState &state, std::ostream &out);
PureState read_snapshot(std::istream &in);

void save_snapshot(const PureState &state, const std::filesystem::path &path);
PureState load_snapshot(const std::filesystem::path &path);

} // namespace envwalk
