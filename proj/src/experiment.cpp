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

#include "envwalk/experiment.hpp"

#include <cmath>
#include <sstream>

#include "envwalk/observables.hpp"
#include "envwalk/parallel.hpp"
#include "envwalk/rng.hpp"

namespace envwalk {

int ModelTemplate::env_dim() const {
    if (const auto *nl = std::get_if<NonlocalSpec>(&environment)) {
        return nl->env_dim;
    }
    return sites >= 0 && sites <= kMaxLocalSites ? 1 << sites : -1;
}

std::string ModelTemplate::describe() const {
    std::ostringstream os;
    os.precision(17);
    if (const auto *nl = std::get_if<NonlocalSpec>(&environment)) {
        os << "nonlocal d_S=" << sites << " d_E=" << nl->env_dim << " spread=" << nl->spread;
        if (nl->fixed) {
            os << " fixed-environment";
        }
    } else {
        const auto &local = std::get<LocalSpec>(environment);
        os << "local d_S=" << sites << " theta0=" << local.g0.theta << " phi0=" << local.g0.phi
           << " theta1=" << local.g1.theta << " phi1=" << local.g1.phi;
    }
    return os.str();
}

WalkModel sample_model(const ModelTemplate &tmpl, std::uint64_t base_seed,
                       std::uint64_t index) {
    RngStream rng = RngStream::for_sample(base_seed, index);
    WalkModel model;
    model.sites = tmpl.sites;
    model.coin = tmpl.coin;
    model.initial_site = tmpl.initial_site.value_or((tmpl.sites - 1) / 2);
    model.initial_coin = tmpl.initial_coin;
    model.initial_env = tmpl.initial_env;
    model.seed = rng.seed();
    if (const auto *nl = std::get_if<NonlocalSpec>(&tmpl.environment)) {
        if (nl->fixed) {
            model.environment = *nl->fixed;
        } else {
            if (nl->env_dim < 1) {
                throw ConfigError("environment dimension must be at least 1");
            }
            model.environment = sample_nonlocal_environment(nl->env_dim, nl->spread, rng);
        }
    } else {
        const auto &local = std::get<LocalSpec>(tmpl.environment);
        model.environment = LocalEnvironment{make_local_gate(local.g0), make_local_gate(local.g1)};
    }
    model.validate();
    return model;
}

ObservableSeries run_series(const WalkModel &model, long steps) {
    ObservableSeries series;
    series.sites = model.sites;
    series.seed = model.seed;
    series.d_omega.reserve(static_cast<std::size_t>(steps) + 1);
    series.entropy.reserve(static_cast<std::size_t>(steps) + 1);
    evolve(model, steps, [&series](long, const PureState &state) {
        const PositionObservables obs = position_observables(state);
        series.d_omega.push_back(obs.d_omega);
        series.entropy.push_back(obs.entropy);
    });
    return series;
}

QuenchResult aggregate_samples(std::vector<ObservableSeries> samples) {
    if (samples.empty()) {
        throw DomainError("aggregate of zero samples");
    }
    const std::size_t len = samples.front().size();
    for (const auto &s : samples) {
        s.validate();
        if (s.size() != len) {
            throw StructuralError("quench samples have different lengths");
        }
    }
    const auto n = static_cast<double>(samples.size());
    QuenchResult out;
    out.mean.sites = samples.front().sites;
    out.mean.label = samples.front().label;
    out.mean.seed = samples.front().seed;
    out.mean.d_omega.assign(len, 0.0);
    out.mean.entropy.assign(len, 0.0);
    out.d_omega_std.assign(len, 0.0);
    out.entropy_std.assign(len, 0.0);
    for (const auto &s : samples) {
        for (std::size_t t = 0; t < len; ++t) {
            out.mean.d_omega[t] += s.d_omega[t];
            out.mean.entropy[t] += s.entropy[t];
        }
    }
    for (std::size_t t = 0; t < len; ++t) {
        out.mean.d_omega[t] /= n;
        out.mean.entropy[t] /= n;
    }
    if (samples.size() > 1) {
        for (const auto &s : samples) {
            for (std::size_t t = 0; t < len; ++t) {
                const double dd = s.d_omega[t] - out.mean.d_omega[t];
                const double dh = s.entropy[t] - out.mean.entropy[t];
                out.d_omega_std[t] += dd * dd;
                out.entropy_std[t] += dh * dh;
            }
        }
        for (std::size_t t = 0; t < len; ++t) {
            out.d_omega_std[t] = std::sqrt(out.d_omega_std[t] / (n - 1.0));
            out.entropy_std[t] = std::sqrt(out.entropy_std[t] / (n - 1.0));
        }
    }
    out.samples = std::move(samples);
    return out;
}

QuenchResult quench_average(const ModelTemplate &tmpl, int n_samples, std::uint64_t base_seed,
                            long steps, const QuenchOptions &options) {
    if (n_samples < 1) {
        throw DomainError("quench average needs at least one sample");
    }
    if (steps < 0) {
        throw DomainError("step count must be non-negative");
    }
    const auto n = static_cast<std::size_t>(n_samples);
    std::vector<ObservableSeries> samples(n);
    std::vector<std::uint64_t> seeds(n);
    const std::string label = tmpl.describe();
    std::vector<std::string> failures(n);
    std::vector<std::exception_ptr> causes(n);
    parallel_for(n, options.threads, [&](std::size_t k) {
        try {
            const WalkModel model = sample_model(tmpl, base_seed, k);
            seeds[k] = model.seed;
            samples[k] = run_series(model, steps);
            samples[k].label = label;
        } catch (const std::exception &ex) {
            failures[k] = ex.what();
            causes[k] = std::current_exception();
        }
    });
    for (std::size_t k = 0; k < n; ++k) {
        if (!failures[k].empty()) {
            throw QuenchError(k, failures[k], causes[k]);
        }
    }
    QuenchResult out = aggregate_samples(std::move(samples));
    out.mean.seed = base_seed;
    out.sample_seeds = std::move(seeds);
    return out;
}

} // namespace envwalk
