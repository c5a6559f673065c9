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

#include "envwalk/sweeps.hpp"

#include <cmath>

namespace envwalk {

MixingPoint mixing_time_point(const ModelTemplate &tmpl, int n_samples, std::uint64_t base_seed,
                              long steps, const QuenchOptions &options,
                              const WindowPolicy &policy) {
    const QuenchResult quench = quench_average(tmpl, n_samples, base_seed, steps, options);
    MixingPoint point;
    point.env_dim = tmpl.env_dim();
    point.samples = n_samples;
    point.sample_seeds = quench.sample_seeds;

    std::vector<double> taus;
    for (const auto &sample : quench.samples) {
        try {
            const FitResult fit = fit_exponential_mixing(sample, select_fit_window(sample, policy));
            taus.push_back(fit.value("tau_mix"));
        } catch (const FitError &ex) {
            if (point.first_failure.empty()) {
                point.first_failure = ex.what();
            }
        }
    }
    point.samples_ok = static_cast<int>(taus.size());
    if (!taus.empty()) {
        double sum = 0.0;
        for (const double t : taus) {
            sum += t;
        }
        point.tau_mix = sum / static_cast<double>(taus.size());
        if (taus.size() > 1) {
            double ss = 0.0;
            for (const double t : taus) {
                ss += (t - point.tau_mix) * (t - point.tau_mix);
            }
            const double n = static_cast<double>(taus.size());
            point.tau_err = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
        }
    }
    try {
        point.mean_series_fit =
            fit_exponential_mixing(quench.mean, select_fit_window(quench.mean, policy));
    } catch (const FitError &) {
        point.mean_series_fit.reset();
    }
    return point;
}

PlateauPoint plateau_from_quench(const QuenchResult &quench, int env_dim,
                                 const WindowPolicy &policy) {
    PlateauPoint point;
    point.sites = quench.mean.sites;
    point.env_dim = env_dim;
    point.sample_seeds = quench.sample_seeds;
    const long last = quench.mean.last_step();
    point.t0 = last / 2;
    if (static_cast<long>(quench.mean.size()) >= policy.min_length) {
        try {
            const FitWindow window = select_fit_window(quench.mean, policy);
            FitResult fit = fit_exponential_mixing(quench.mean, window);
            point.t0 = default_average_start(last, window, fit.value("tau_mix"));
            point.fit = std::move(fit);
            point.used_fit = true;
        } catch (const FitError &) {
            point.used_fit = false;
        }
    }
    point.mean_d = long_time_average(quench.mean, point.t0, last);
    point.mean_entropy = long_time_average(quench.mean.entropy, point.t0, last);
    if (quench.samples.size() > 1) {
        const auto n = static_cast<double>(quench.samples.size());
        double ss = 0.0;
        for (const auto &sample : quench.samples) {
            const double m = long_time_average(sample, point.t0, last);
            ss += (m - point.mean_d) * (m - point.mean_d);
        }
        point.std_d = std::sqrt(ss / (n - 1.0));
        point.sem_d = point.std_d / std::sqrt(n);
    }
    return point;
}

PlateauPoint plateau_point(const ModelTemplate &tmpl, int n_samples, std::uint64_t base_seed,
                           long steps, const QuenchOptions &options, const WindowPolicy &policy) {
    const QuenchResult quench = quench_average(tmpl, n_samples, base_seed, steps, options);
    return plateau_from_quench(quench, tmpl.env_dim(), policy);
}

} // namespace envwalk
