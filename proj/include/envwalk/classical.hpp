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
 * Unbiased, non-lazy classical random walk on an odd ring: the classical
 * reference for distance-to-uniform decay and mixing time.
 */
#pragma once

#include <span>
#include <vector>

#include "envwalk/analysis.hpp"

namespace envwalk {

class ProbabilityVector {
  public:
    /// Checks entries >= 0 and sum 1 within 1e-12.
    explicit ProbabilityVector(std::vector<double> p);

    static ProbabilityVector localized(int sites, int site);
    static ProbabilityVector uniform(int sites);

    [[nodiscard]] int sites() const noexcept { return static_cast<int>(p_.size()); }
    [[nodiscard]] std::span<const double> values() const noexcept { return p_; }
    [[nodiscard]] double operator[](std::size_t i) const { return p_[i]; }

    /// 1/2 sum |p_s - 1/d_S|.
    [[nodiscard]] double distance_to_uniform() const;
    /// -sum p ln p.
    [[nodiscard]] double shannon_entropy() const;

  private:
    std::vector<double> p_;
};

/// p'_s = (p_{s-1} + p_{s+1}) / 2, indices mod d_S.
ProbabilityVector classical_step(const ProbabilityVector &p);

/// D(t) for t = 0..steps from a walker localized at `start`.
std::vector<double> classical_distance_series(int sites, int start, long steps);

/// Same run as an ObservableSeries; the entropy column is the Shannon entropy.
ObservableSeries classical_series(int sites, int start, long steps);

/// -1 / ln cos(pi / d_S): decay time of the slowest mode of the odd ring.
double spectral_mixing_time(int sites);

struct ClassicalMixing {
    FitResult fit;
    double spectral_tau{0.0};
    long steps{0};
};

/**
 * Exponential fit of the classical series with the same window rule and
 * fitter used for quantum runs. The run length is ceil(20 tau_spectral),
 * at least 200 steps, unless `steps` is given.
 */
ClassicalMixing classical_mixing_time(int sites, long steps = 0,
                                      const WindowPolicy &policy = {});

} // namespace envwalk
