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
 * Running walks end to end: model templates, per-sample environment
 * sampling, observable series and quench averages over environments.
 */
#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "envwalk/analysis.hpp"
#include "envwalk/environment.hpp"
#include "envwalk/errors.hpp"
#include "envwalk/walk.hpp"

namespace envwalk {

struct NonlocalSpec {
    int env_dim{1};
    double spread{kDefaultSpread};
    /// Used verbatim for every sample instead of sampling.
    std::optional<NonlocalEnvironment> fixed;
};

struct LocalSpec {
    GateAngles g0;
    GateAngles g1;
};

/// Everything about a walk except the per-sample environment draw.
struct ModelTemplate {
    int sites{1};
    Matrix2c coin{hadamard_coin()};
    std::variant<NonlocalSpec, LocalSpec> environment{NonlocalSpec{}};
    /// Defaults to the central site (d_S - 1) / 2.
    std::optional<int> initial_site;
    Vector2c initial_coin{plus_i_coin()};
    CVector initial_env{};

    [[nodiscard]] int env_dim() const;
    [[nodiscard]] std::string describe() const;
};

/**
 * Model of quench sample `index`: the environment (nonlocal, not fixed) is
 * drawn from RngStream::for_sample(base_seed, index); model.seed records
 * that stream's seed.
 */
WalkModel sample_model(const ModelTemplate &tmpl, std::uint64_t base_seed,
                       std::uint64_t index);

/// D_omega(t) and H(rho_S(t)) for t = 0..steps.
ObservableSeries run_series(const WalkModel &model, long steps);

class QuenchError : public Error {
  public:
    QuenchError(std::size_t index, const std::string &what, std::exception_ptr cause = nullptr)
        : Error("quench sample " + std::to_string(index) + " failed: " + what),
          index_(index), cause_(std::move(cause)) {}
    [[nodiscard]] std::size_t sample_index() const noexcept { return index_; }
    /// The exception the sample threw, if captured.
    [[nodiscard]] const std::exception_ptr &cause() const noexcept { return cause_; }

  private:
    std::size_t index_;
    std::exception_ptr cause_;
};

struct QuenchOptions {
    /// 0 = hardware concurrency.
    unsigned threads{0};
};

struct QuenchResult {
    ObservableSeries mean;
    /// Sample standard deviation (n - 1 denominator); zero for n = 1.
    std::vector<double> d_omega_std;
    std::vector<double> entropy_std;
    std::vector<ObservableSeries> samples;
    std::vector<std::uint64_t> sample_seeds;
};

/**
 * n_samples independent runs of `steps` steps, sample k using environment
 * stream (base_seed, k). Means are accumulated in sample-index order, so
 * the result is bitwise reproducible regardless of thread count.
 */
QuenchResult quench_average(const ModelTemplate &tmpl, int n_samples,
                            std::uint64_t base_seed, long steps,
                            const QuenchOptions &options = {});

/// Pointwise mean and sample standard deviation of equal-length series.
QuenchResult aggregate_samples(std::vector<ObservableSeries> samples);

} // namespace envwalk
