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

#pragma once

#include <cstddef>
#include <functional>

namespace envwalk {

/// Worker count for `requested` threads; 0 means hardware concurrency.
unsigned resolve_threads(unsigned requested);

/**
 * Runs body(i) for i in [0, n) on up to `threads` workers. Each index runs
 * exactly once. If any call throws, the exception of the lowest failing
 * index is rethrown after all workers finish.
 */
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)> &body);

} // namespace envwalk
