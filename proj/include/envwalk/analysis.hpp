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
 * Time-series analysis: fit-window selection, exponential mixing-time fit,
 * long-time averages and the power-law fit of plateau distances against
 * the bath-to-system dimension ratio.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace envwalk {

/// Per-step observables; row i is time step t = i.
struct ObservableSeries {
    std::vector<double> d_omega;
    std::vector<double> entropy;
    /// Ring size, used by the window rule to skip the ballistic transient.
    int sites{1};
    std::string label;
    std::uint64_t seed{0};

    [[nodiscard]] std::size_t size() const noexcept { return d_omega.size(); }
    /// Last time step T.
    [[nodiscard]] long last_step() const noexcept {
        return static_cast<long>(d_omega.size()) - 1;
    }
    /// Throws StructuralError unless both columns have the same length.
    void validate() const;
};

/// Inclusive range [first, last] of time steps.
struct FitWindow {
    long first{0};
    long last{0};

    [[nodiscard]] long span() const noexcept { return last - first; }
    friend bool operator==(const FitWindow &, const FitWindow &) = default;
};

struct WindowPolicy {
    /// t1 is the first step with D(t) <= decay_fraction * D(0) ...
    double decay_fraction{0.9};
    /// ... and t >= ceil(sites / 2) when set.
    bool skip_ballistic{true};
    /// Fraction of the series at its end used for the plateau estimate.
    double plateau_tail{0.25};
    /// The window ends before D first drops below plateau_factor * P.
    double plateau_factor{1.5};
    /// Without a plateau, the window ends at the last D above this floor.
    double floor{1e-6};
    long min_span{10};
    long min_length{50};
};

/**
 * Fit window rule for a decaying series D(t).
 *
 * P is the mean of the last `plateau_tail` fraction of the series. The
 * series counts as plateau-free (classical decay) when P <= floor or its
 * last value is below P / 2; then t2 is the last step with D > floor.
 * Otherwise t2 is the step before D first falls below
 * P + (plateau_factor - 1) * min(P, D(t1) - P), which is plateau_factor * P
 * whenever D(t1) >= 2 P and otherwise sits the same fraction of the way
 * from P to D(t1). Throws FitWindowError if t2 - t1 < min_span.
 */
FitWindow select_fit_window(std::span<const double> d_omega, int sites,
                            const WindowPolicy &policy = {});
FitWindow select_fit_window(const ObservableSeries &series,
                            const WindowPolicy &policy = {});

/// Mean of the final `tail` fraction of the series.
double plateau_estimate(std::span<const double> d_omega, double tail = 0.25);

struct FitResult {
    std::map<std::string, double> params;
    std::map<std::string, double> std_errors;
    /// Time window for series fits.
    std::optional<FitWindow> window;
    /// (x, y) points for point-set fits, in the order used.
    std::vector<std::pair<double, double>> points;
    /// RMS of residuals of the linearized (log) model.
    double residual_rms{0.0};
    std::size_t n_points{0};

    [[nodiscard]] double value(const std::string &name) const;
    [[nodiscard]] double error(const std::string &name) const;
};

nlohmann::json fit_to_json(const FitResult &fit);

/**
 * Ordinary least squares of ln D(t) against t on the window:
 * tau_mix = -1 / slope, std error propagated from the slope error.
 * Params: "tau_mix", "log_prefactor".
 */
FitResult fit_exponential_mixing(std::span<const double> d_omega, FitWindow window);
FitResult fit_exponential_mixing(const ObservableSeries &series, FitWindow window);

/// Mean of D over [t0, t] inclusive, denominator t - t0 + 1.
double long_time_average(std::span<const double> d_omega, long t0, long t);
double long_time_average(const ObservableSeries &series, long t0, long t);

/// min(t2 + 5 tau, T / 2).
long default_average_start(long last_step, FitWindow window, double tau_mix);

struct PowerLawPoint {
    double ratio{0.0};
    double distance{0.0};
};

/**
 * Least squares of ln y against ln r: C = exp(intercept), x = -slope.
 * Points are sorted before fitting, so the result does not depend on input
 * order. Needs >= 4 points, every ratio > 1 and every y > 0.
 * Params: "C", "x".
 */
FitResult fit_power_law(std::span<const PowerLawPoint> points);

} // namespace envwalk
