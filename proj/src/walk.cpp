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

#include "envwalk/walk.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "envwalk/errors.hpp"

namespace envwalk {

namespace {

using StridedMap = Eigen::Map<CMatrix, 0, Eigen::OuterStride<>>;
using ConstStridedMap = Eigen::Map<const CMatrix, 0, Eigen::OuterStride<>>;

void require_unitary(const CMatrix &u, const char *name) {
    if (u.rows() != u.cols()) {
        throw StructuralError(std::string(name) + " is not square");
    }
    const double err = unitarity_error(u);
    if (!(err < kUnitaryTolerance)) {
        throw ConfigError(std::string(name) + " is not unitary (||U^dag U - I|| = " +
                          std::to_string(err) + ")");
    }
}

void require_length(std::size_t n, std::size_t expected, const char *what) {
    if (n != expected) {
        throw StructuralError(std::string(what) + " has length " + std::to_string(n) +
                              ", expected " + std::to_string(expected));
    }
}

} // namespace

Matrix2c hadamard_coin() {
    const double h = 1.0 / std::sqrt(2.0);
    Matrix2c f;
    f << h, h, h, -h;
    return f;
}

Vector2c plus_i_coin() {
    const double h = 1.0 / std::sqrt(2.0);
    return Vector2c(Complex(h, 0.0), Complex(0.0, h));
}

int WalkModel::env_dim() const {
    if (const auto *local = std::get_if<LocalEnvironment>(&environment)) {
        (void)local;
        return 1 << sites;
    }
    return static_cast<int>(std::get<NonlocalEnvironment>(environment).e0.rows());
}

void WalkModel::validate() const {
    if (sites < 1 || sites % 2 == 0) {
        throw ConfigError("site count must be a positive odd integer, got " +
                          std::to_string(sites));
    }
    require_unitary(coin, "coin");
    if (const auto *env = std::get_if<NonlocalEnvironment>(&environment)) {
        if (env->e0.rows() < 1) {
            throw StructuralError("environment dimension must be at least 1");
        }
        if (env->e0.rows() != env->e1.rows() || env->e0.cols() != env->e1.cols()) {
            throw StructuralError("E0 and E1 have different shapes");
        }
        require_unitary(env->e0, "E0");
        require_unitary(env->e1, "E1");
    } else {
        const auto &local = std::get<LocalEnvironment>(environment);
        if (sites > kMaxLocalSites) {
            throw ConfigError("local environment supports at most " +
                              std::to_string(kMaxLocalSites) + " sites");
        }
        require_unitary(local.g0, "G0");
        require_unitary(local.g1, "G1");
    }
    if (initial_site < 0 || initial_site >= sites) {
        throw ConfigError("initial site " + std::to_string(initial_site) +
                          " outside [0, " + std::to_string(sites) + ")");
    }
    if (std::abs(initial_coin.norm() - 1.0) > 1e-10) {
        throw ConfigError("initial coin vector is not normalized");
    }
    if (initial_env.size() != 0) {
        if (initial_env.size() != env_dim()) {
            throw ConfigError("initial environment vector has length " +
                              std::to_string(initial_env.size()) + ", expected " +
                              std::to_string(env_dim()));
        }
        if (std::abs(initial_env.norm() - 1.0) > 1e-10) {
            throw ConfigError("initial environment vector is not normalized");
        }
    }
}

PureState::PureState(int sites, int env_dim)
    : sites_(sites), env_dim_(env_dim) {
    if (sites < 1 || env_dim < 1) {
        throw StructuralError("state dimensions must be positive");
    }
    amp_.assign(2U * static_cast<std::size_t>(sites) * static_cast<std::size_t>(env_dim),
                Complex{});
}

PureState PureState::from_amplitudes(int sites, int env_dim,
                                     std::vector<Complex> amplitudes,
                                     double norm_tol) {
    PureState state(sites, env_dim);
    require_length(amplitudes.size(), state.size(), "amplitude vector");
    state.amp_ = std::move(amplitudes);
    if (std::abs(state.norm() - 1.0) > norm_tol) {
        throw ConfigError("amplitude vector is not normalized");
    }
    return state;
}

double PureState::norm() const {
    double acc = 0.0;
    for (const auto &a : amp_) {
        acc += std::norm(a);
    }
    return std::sqrt(acc);
}

std::vector<double> PureState::site_probabilities() const {
    std::vector<double> p(static_cast<std::size_t>(sites_), 0.0);
    const std::size_t block = 2U * static_cast<std::size_t>(env_dim_);
    for (std::size_t s = 0; s < p.size(); ++s) {
        double acc = 0.0;
        for (std::size_t k = 0; k < block; ++k) {
            acc += std::norm(amp_[s * block + k]);
        }
        p[s] = acc;
    }
    return p;
}

PureState init_state(const WalkModel &model) {
    model.validate();
    const int d_e = model.env_dim();
    PureState state(model.sites, d_e);
    for (int c = 0; c < 2; ++c) {
        if (model.initial_env.size() == 0) {
            state.at(model.initial_site, c, 0) = model.initial_coin(c);
            continue;
        }
        for (int e = 0; e < d_e; ++e) {
            state.at(model.initial_site, c, e) = model.initial_coin(c) * model.initial_env(e);
        }
    }
    return state;
}

void apply_nonlocal_step(std::span<const Complex> in, std::span<Complex> out,
                         std::span<Complex> scratch, int sites,
                         const Matrix2c &coin, const CMatrix &e0,
                         const CMatrix &e1) {
    const auto d_e = e0.rows();
    if (e0.cols() != d_e || e1.rows() != d_e || e1.cols() != d_e) {
        throw StructuralError("environment matrices must be square and equal-sized");
    }
    const std::size_t n = 2U * static_cast<std::size_t>(sites) * static_cast<std::size_t>(d_e);
    require_length(in.size(), n, "input state");
    require_length(out.size(), n, "output state");
    require_length(scratch.size(), n, "scratch buffer");

    const Eigen::Index ds = sites;
    const Eigen::OuterStride<> stride(2 * d_e);
    ConstStridedMap in0(in.data(), d_e, ds, stride);
    ConstStridedMap in1(in.data() + d_e, d_e, ds, stride);
    StridedMap mid0(scratch.data(), d_e, ds, stride);
    StridedMap mid1(scratch.data() + d_e, d_e, ds, stride);
    StridedMap out0(out.data(), d_e, ds, stride);
    StridedMap out1(out.data() + d_e, d_e, ds, stride);

    mid0 = coin(0, 0) * in0 + coin(0, 1) * in1;
    mid1 = coin(1, 0) * in0 + coin(1, 1) * in1;

    // c = 0: s -> s - 1
    out0.leftCols(ds - 1).noalias() = e0 * mid0.rightCols(ds - 1);
    out0.col(ds - 1).noalias() = e0 * mid0.col(0);
    // c = 1: s -> s + 1
    out1.rightCols(ds - 1).noalias() = e1 * mid1.leftCols(ds - 1);
    out1.col(0).noalias() = e1 * mid1.col(ds - 1);
}

void apply_local_step(std::span<const Complex> in, std::span<Complex> out,
                      int sites, const Matrix2c &coin, const Matrix2c &g0,
                      const Matrix2c &g1) {
    if (sites < 1 || sites > kMaxLocalSites) {
        throw StructuralError("local step needs 1 <= sites <= " +
                              std::to_string(kMaxLocalSites));
    }
    const std::size_t d_e = std::size_t{1} << static_cast<unsigned>(sites);
    const std::size_t n = 2U * static_cast<std::size_t>(sites) * d_e;
    require_length(in.size(), n, "input state");
    require_length(out.size(), n, "output state");

    const Matrix2c *gates[2] = {&g0, &g1};
    for (int s = 0; s < sites; ++s) {
        const Complex *a0 = in.data() + d_e * (2U * static_cast<std::size_t>(s));
        const Complex *a1 = a0 + d_e;
        const std::size_t bit = std::size_t{1} << static_cast<unsigned>(s);
        for (int c = 0; c < 2; ++c) {
            const int target = c == 0 ? (s + sites - 1) % sites : (s + 1) % sites;
            Complex *dst = out.data() + d_e * (static_cast<std::size_t>(c) +
                                               2U * static_cast<std::size_t>(target));
            const Complex f0 = coin(c, 0);
            const Complex f1 = coin(c, 1);
            const Matrix2c &g = *gates[c];
            for (std::size_t e = 0; e < d_e; ++e) {
                if ((e & bit) != 0U) {
                    continue;
                }
                const std::size_t e1 = e | bit;
                const Complex lo = f0 * a0[e] + f1 * a1[e];
                const Complex hi = f0 * a0[e1] + f1 * a1[e1];
                dst[e] = g(0, 0) * lo + g(0, 1) * hi;
                dst[e1] = g(1, 0) * lo + g(1, 1) * hi;
            }
        }
    }
}

PureState step_nonlocal(const PureState &state, const Matrix2c &coin,
                        const CMatrix &e0, const CMatrix &e1) {
    if (e0.rows() != state.env_dim()) {
        throw StructuralError("environment matrix dimension " + std::to_string(e0.rows()) +
                              " does not match state d_E " +
                              std::to_string(state.env_dim()));
    }
    PureState next(state.sites(), state.env_dim());
    std::vector<Complex> scratch(state.size());
    apply_nonlocal_step(state.amplitudes(), next.amplitudes(), scratch, state.sites(),
                        coin, e0, e1);
    return next;
}

PureState step_local(const PureState &state, const Matrix2c &coin,
                     const Matrix2c &g0, const Matrix2c &g1) {
    if (state.sites() > kMaxLocalSites ||
        state.env_dim() != (1 << state.sites())) {
        throw StructuralError("local step requires d_E = 2^d_S");
    }
    PureState next(state.sites(), state.env_dim());
    apply_local_step(state.amplitudes(), next.amplitudes(), state.sites(), coin, g0, g1);
    return next;
}

Stepper::Stepper(WalkModel model) : model_(std::move(model)) {
    model_.validate();
    const std::size_t n = 2U * static_cast<std::size_t>(model_.sites) *
                          static_cast<std::size_t>(model_.env_dim());
    next_.resize(n);
    if (!model_.is_local()) {
        scratch_.resize(n);
    }
}

void Stepper::apply(std::span<const Complex> in, std::span<Complex> out) {
    if (const auto *env = std::get_if<NonlocalEnvironment>(&model_.environment)) {
        apply_nonlocal_step(in, out, scratch_, model_.sites, model_.coin, env->e0, env->e1);
    } else {
        const auto &local = std::get<LocalEnvironment>(model_.environment);
        apply_local_step(in, out, model_.sites, model_.coin, local.g0, local.g1);
    }
}

void Stepper::advance(PureState &state) {
    if (state.sites() != model_.sites || state.env_dim() != model_.env_dim()) {
        throw StructuralError("state shape does not match the stepper's model");
    }
    apply(state.amplitudes(), next_);
    auto amps = state.amplitudes();
    std::copy(next_.begin(), next_.end(), amps.begin());
}

PureState evolve(const WalkModel &model, long steps, const StepObserver &observer) {
    if (steps < 0) {
        throw DomainError("step count must be non-negative");
    }
    PureState state = init_state(model);
    Stepper stepper(model);
    if (observer) {
        observer(0, state);
    }
    for (long t = 1; t <= steps; ++t) {
        stepper.advance(state);
        if (observer) {
            observer(t, state);
        }
    }
    return state;
}

} // namespace envwalk
