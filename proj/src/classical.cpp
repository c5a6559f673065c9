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

#include "envwalk/classical.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "envwalk/errors.hpp"

namespace envwalk {

namespace {

void require_odd(int sites) {
    if (sites < 1 || sites % 2 == 0) {
        throw ConfigError("site count must be a positive odd integer, got " +
                          std::to_string(sites));
    }
}

} // namespace

ProbabilityVector::ProbabilityVector(std::vector<double> p) : p_(std::move(p)) {
    if (p_.empty()) {
        throw DomainError("probability vector must be non-empty");
    }
    for (const double v : p_) {
        if (!(v >= 0.0)) {
            throw DomainError("probability vector has a negative entry");
        }
    }
    const double total = std::accumulate(p_.begin(), p_.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12) {
        throw DomainError("probabilities sum to " + std::to_string(total));
    }
}

ProbabilityVector ProbabilityVector::localized(int sites, int site) {
    require_odd(sites);
    if (site < 0 || site >= sites) {
        throw ConfigError("start site outside the ring");
    }
    std::vector<double> p(static_cast<std::size_t>(sites), 0.0);
    p[static_cast<std::size_t>(site)] = 1.0;
    return ProbabilityVector(std::move(p));
}

ProbabilityVector ProbabilityVector::uniform(int sites) {
    require_odd(sites);
    return ProbabilityVector(
        std::vector<double>(static_cast<std::size_t>(sites), 1.0 / static_cast<double>(sites)));
}

double ProbabilityVector::distance_to_uniform() const {
    const double u = 1.0 / static_cast<double>(p_.size());
    double acc = 0.0;
    for (const double v : p_) {
        acc += std::abs(v - u);
    }
    return 0.5 * acc;
}

double ProbabilityVector::shannon_entropy() const {
    double h = 0.0;
    for (const double v : p_) {
        if (v > 0.0) {
            h -= v * std::log(v);
        }
    }
    return h;
}

ProbabilityVector classical_step(const ProbabilityVector &p) {
    const auto n = static_cast<std::size_t>(p.sites());
    std::vector<double> next(n);
    for (std::size_t s = 0; s < n; ++s) {
        next[s] = 0.5 * p[(s + n - 1) % n] + 0.5 * p[(s + 1) % n];
    }
    // Rounding can drift the total by a few ulps over long runs.
    const double total = std::accumulate(next.begin(), next.end(), 0.0);
    for (auto &v : next) {
        v /= total;
    }
    return ProbabilityVector(std::move(next));
}

ObservableSeries classical_series(int sites, int start, long steps) {
    if (steps < 0) {
        throw DomainError("step count must be non-negative");
    }
    ObservableSeries series;
    series.sites = sites;
    series.label = "classical d_S=" + std::to_string(sites);
    ProbabilityVector p = ProbabilityVector::localized(sites, start);
    for (long t = 0; t <= steps; ++t) {
        if (t > 0) {
            p = classical_step(p);
        }
        series.d_omega.push_back(p.distance_to_uniform());
        series.entropy.push_back(p.shannon_entropy());
    }
    return series;
}

std::vector<double> classical_distance_series(int sites, int start, long steps) {
    return classical_series(sites, start, steps).d_omega;
}

double spectral_mixing_time(int sites) {
    require_odd(sites);
    if (sites == 1) {
        return 0.0;
    }
    return -1.0 / std::log(std::cos(std::numbers::pi / static_cast<double>(sites)));
}

ClassicalMixing classical_mixing_time(int sites, long steps, const WindowPolicy &policy) {
    ClassicalMixing out;
    out.spectral_tau = spectral_mixing_time(sites);
    out.steps = steps > 0 ? steps
                          : std::max(200L, static_cast<long>(std::ceil(20.0 * out.spectral_tau)));
    const ObservableSeries series = classical_series(sites, (sites - 1) / 2, out.steps);
    out.fit = fit_exponential_mixing(series, select_fit_window(series, policy));
    return out;
}

} // namespace envwalk
