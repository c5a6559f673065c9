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
 * Per-point experiment drivers shared by the command-line sweeps and the
 * acceptance suite: quench-averaged mixing time, and the long-time plateau
 * of the distance to the maximally mixed state.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "envwalk/analysis.hpp"
#include "envwalk/experiment.hpp"

namespace envwalk {

struct MixingPoint {
    int env_dim{0};
    /// Mean of the per-sample fitted tau_mix over samples whose fit succeeded.
    double tau_mix{0.0};
    /// Standard error of that mean (0 with a single successful sample).
    double tau_err{0.0};
    int samples_ok{0};
    int samples{0};
    /// Fit of the quench-mean series, when its window could be selected.
    std::optional<FitResult> mean_series_fit;
    std::vector<std::uint64_t> sample_seeds;
    /// First per-sample failure message, if any.
    std::string first_failure;

    [[nodiscard]] bool ok() const noexcept { return samples_ok > 0; }
};

MixingPoint mixing_time_point(const ModelTemplate &tmpl, int n_samples, std::uint64_t base_seed,
                              long steps, const QuenchOptions &options = {},
                              const WindowPolicy &policy = {});

struct PlateauPoint {
    int sites{0};
    int env_dim{0};
    /// Start of the averaging range; the range ends at the last step.
    long t0{0};
    /// Long-time average of the quench-mean distance.
    double mean_d{0.0};
    /// Sample standard deviation of the per-sample long-time averages.
    double std_d{0.0};
    double sem_d{0.0};
    /// Long-time average of the quench-mean entropy over the same range.
    double mean_entropy{0.0};
    /// False when t0 fell back to T/2 because no window or fit was available.
    bool used_fit{false};
    std::optional<FitResult> fit;
    std::vector<std::uint64_t> sample_seeds;

    [[nodiscard]] double ratio() const noexcept {
        return 2.0 * static_cast<double>(env_dim) / static_cast<double>(sites);
    }
};

/// Long-time plateau from a finished quench: t0 = min(t2 + 5 tau, T/2).
PlateauPoint plateau_from_quench(const QuenchResult &quench, int env_dim,
                                 const WindowPolicy &policy = {});

PlateauPoint plateau_point(const ModelTemplate &tmpl, int n_samples, std::uint64_t base_seed,
                           long steps, const QuenchOptions &options = {},
                           const WindowPolicy &policy = {});

} // namespace envwalk
