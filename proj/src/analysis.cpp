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

#include "envwalk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "envwalk/errors.hpp"

namespace envwalk {

namespace {

struct LineFit {
    double slope{0.0};
    double intercept{0.0};
    double slope_error{0.0};
    double intercept_error{0.0};
    double residual_rms{0.0};
};

LineFit least_squares_line(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) {
        throw FitError("least squares needs at least two distinct abscissae");
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ssr += r * r;
    }
    fit.residual_rms = std::sqrt(ssr / n);
    const double s2 = x.size() > 2 ? ssr / (n - 2.0) : 0.0;
    fit.slope_error = std::sqrt(s2 / sxx);
    fit.intercept_error = std::sqrt(s2 * (1.0 / n + mx * mx / sxx));
    return fit;
}

} // namespace

void ObservableSeries::validate() const {
    if (d_omega.size() != entropy.size()) {
        throw StructuralError("series columns have different lengths");
    }
}

double plateau_estimate(std::span<const double> d_omega, double tail) {
    if (d_omega.empty()) {
        throw DomainError("plateau estimate of an empty series");
    }
    const auto n = d_omega.size();
    const auto count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(tail * static_cast<double>(n))));
    const auto first = d_omega.end() - static_cast<std::ptrdiff_t>(count);
    return std::accumulate(first, d_omega.end(), 0.0) / static_cast<double>(count);
}

FitWindow select_fit_window(std::span<const double> d, int sites, const WindowPolicy &policy) {
    if (static_cast<long>(d.size()) < policy.min_length) {
        throw DomainError("fit window selection needs at least " +
                          std::to_string(policy.min_length) + " points");
    }
    const long last = static_cast<long>(d.size()) - 1;
    const long earliest = policy.skip_ballistic ? (sites + 1) / 2 : 0;

    long t1 = -1;
    for (long t = earliest; t <= last; ++t) {
        if (d[static_cast<std::size_t>(t)] <= policy.decay_fraction * d[0]) {
            t1 = t;
            break;
        }
    }
    if (t1 < 0) {
        throw FitWindowError("series never decays below " +
                                 std::to_string(policy.decay_fraction) + " D(0)",
                             -1, -1);
    }

    const double plateau = plateau_estimate(d, policy.plateau_tail);
    const bool plateau_free = plateau <= policy.floor || d.back() < 0.5 * plateau;
    long t2 = -1;
    if (plateau_free) {
        for (long t = last; t >= 0; --t) {
            if (d[static_cast<std::size_t>(t)] > policy.floor) {
                t2 = t;
                break;
            }
        }
    } else {
        const double excess = std::min(plateau, d[static_cast<std::size_t>(t1)] - plateau);
        const double threshold = plateau + (policy.plateau_factor - 1.0) * excess;
        t2 = last;
        for (long t = t1; t <= last; ++t) {
            if (d[static_cast<std::size_t>(t)] < threshold) {
                t2 = t - 1;
                break;
            }
        }
    }
    if (t2 - t1 < policy.min_span) {
        throw FitWindowError("fit window [" + std::to_string(t1) + ", " + std::to_string(t2) +
                                 "] shorter than " + std::to_string(policy.min_span) + " steps",
                             t1, t2);
    }
    return FitWindow{t1, t2};
}

FitWindow select_fit_window(const ObservableSeries &series, const WindowPolicy &policy) {
    return select_fit_window(series.d_omega, series.sites, policy);
}

double FitResult::value(const std::string &name) const {
    const auto it = params.find(name);
    if (it == params.end()) {
        throw DomainError("fit has no parameter '" + name + "'");
    }
    return it->second;
}

double FitResult::error(const std::string &name) const {
    const auto it = std_errors.find(name);
    if (it == std_errors.end()) {
        throw DomainError("fit has no error for '" + name + "'");
    }
    return it->second;
}

nlohmann::json fit_to_json(const FitResult &fit) {
    nlohmann::json j;
    j["params"] = fit.params;
    j["std_errors"] = fit.std_errors;
    j["residual_rms"] = fit.residual_rms;
    j["n_points"] = fit.n_points;
    if (fit.window) {
        j["window"] = {fit.window->first, fit.window->last};
    }
    if (!fit.points.empty()) {
        auto pts = nlohmann::json::array();
        for (const auto &[x, y] : fit.points) {
            pts.push_back({x, y});
        }
        j["points"] = std::move(pts);
    }
    return j;
}

FitResult fit_exponential_mixing(std::span<const double> d, FitWindow window) {
    if (window.first < 0 || window.last >= static_cast<long>(d.size()) ||
        window.last - window.first < 1) {
        throw DomainError("exponential fit window out of range");
    }
    std::vector<double> t;
    std::vector<double> log_d;
    for (long i = window.first; i <= window.last; ++i) {
        const double v = d[static_cast<std::size_t>(i)];
        if (!(v > 0.0)) {
            throw DomainError("non-positive distance at t = " + std::to_string(i));
        }
        t.push_back(static_cast<double>(i));
        log_d.push_back(std::log(v));
    }
    const LineFit line = least_squares_line(t, log_d);
    if (!(line.slope < 0.0)) {
        throw FitError("distance does not decay on [" + std::to_string(window.first) + ", " +
                       std::to_string(window.last) + "]");
    }
    FitResult fit;
    const double tau = -1.0 / line.slope;
    fit.params = {{"tau_mix", tau}, {"log_prefactor", line.intercept}};
    fit.std_errors = {{"tau_mix", line.slope_error / (line.slope * line.slope)},
                      {"log_prefactor", line.intercept_error}};
    fit.window = window;
    fit.residual_rms = line.residual_rms;
    fit.n_points = t.size();
    return fit;
}

FitResult fit_exponential_mixing(const ObservableSeries &series, FitWindow window) {
    return fit_exponential_mixing(series.d_omega, window);
}

double long_time_average(std::span<const double> d, long t0, long t) {
    if (t0 < 0 || t < t0 || t >= static_cast<long>(d.size())) {
        throw DomainError("long-time average range [" + std::to_string(t0) + ", " +
                          std::to_string(t) + "] is empty or out of range");
    }
    double sum = 0.0;
    for (long i = t0; i <= t; ++i) {
        sum += d[static_cast<std::size_t>(i)];
    }
    return sum / static_cast<double>(t - t0 + 1);
}

double long_time_average(const ObservableSeries &series, long t0, long t) {
    return long_time_average(series.d_omega, t0, t);
}

long default_average_start(long last_step, FitWindow window, double tau_mix) {
    const long cap = last_step / 2;
    if (!std::isfinite(tau_mix) || tau_mix <= 0.0) {
        return cap;
    }
    const double start = static_cast<double>(window.last) + 5.0 * tau_mix;
    return start >= static_cast<double>(cap) ? cap : static_cast<long>(std::ceil(start));
}

FitResult fit_power_law(std::span<const PowerLawPoint> input) {
    if (input.size() < 4) {
        throw DomainError("power-law fit needs at least 4 points, got " +
                          std::to_string(input.size()));
    }
    std::vector<PowerLawPoint> pts(input.begin(), input.end());
    for (const auto &p : pts) {
        if (!(p.ratio > 1.0) || !(p.distance > 0.0)) {
            throw DomainError("power-law points need ratio > 1 and distance > 0");
        }
    }
    std::sort(pts.begin(), pts.end(), [](const PowerLawPoint &a, const PowerLawPoint &b) {
        return a.ratio != b.ratio ? a.ratio < b.ratio : a.distance < b.distance;
    });
    std::vector<double> lx;
    std::vector<double> ly;
    FitResult fit;
    for (const auto &p : pts) {
        lx.push_back(std::log(p.ratio));
        ly.push_back(std::log(p.distance));
        fit.points.emplace_back(p.ratio, p.distance);
    }
    const LineFit line = least_squares_line(lx, ly);
    const double c = std::exp(line.intercept);
    fit.params = {{"C", c}, {"x", -line.slope}};
    fit.std_errors = {{"C", c * line.intercept_error}, {"x", line.slope_error}};
    fit.residual_rms = line.residual_rms;
    fit.n_points = pts.size();
    return fit;
}

} // namespace envwalk
