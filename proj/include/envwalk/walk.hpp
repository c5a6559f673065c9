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
 * Wavefunction of a walker on an odd ring coupled to a finite environment,
 * and the structured one-step evolution operators.
 *
 * Amplitudes are stored with the environment index innermost:
 * flat index = e + d_E * (c + 2 * s). The step operators act block-wise on
 * this layout and never form the full (2 d_S d_E) x (2 d_S d_E) unitary.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "envwalk/linalg.hpp"

namespace envwalk {

inline constexpr int kMaxLocalSites = 14;
inline constexpr double kUnitaryTolerance = 1e-10;

/// 1/sqrt(2) * [[1, 1], [1, -1]].
Matrix2c hadamard_coin();

/// (|0> + i|1>) / sqrt(2).
Vector2c plus_i_coin();

/// E0 acts on left-moving components, E1 on right-moving ones.
struct NonlocalEnvironment {
    CMatrix e0;
    CMatrix e1;
};

/**
 * One ancilla qubit per site. The walker at site s applies G_c to qubit s,
 * which is bit s of the environment index (bit 0 = site 0).
 */
struct LocalEnvironment {
    Matrix2c g0;
    Matrix2c g1;
};

using Environment = std::variant<NonlocalEnvironment, LocalEnvironment>;

struct WalkModel {
    int sites{1};
    Matrix2c coin{hadamard_coin()};
    Environment environment{NonlocalEnvironment{CMatrix::Identity(1, 1),
                                                CMatrix::Identity(1, 1)}};
    int initial_site{0};
    Vector2c initial_coin{plus_i_coin()};
    /// Empty means the environment basis state |0>.
    CVector initial_env{};
    std::uint64_t seed{0};

    [[nodiscard]] bool is_local() const {
        return std::holds_alternative<LocalEnvironment>(environment);
    }
    [[nodiscard]] int env_dim() const;
    [[nodiscard]] int bath_dim() const { return 2 * env_dim(); }

    /// Throws ConfigError or StructuralError if an invariant is violated.
    void validate() const;
};

class PureState {
  public:
    /// All-zero amplitudes; not a valid state until filled.
    PureState(int sites, int env_dim);

    /// Takes ownership of `amplitudes`; checks length and unit norm.
    static PureState from_amplitudes(int sites, int env_dim,
                                     std::vector<Complex> amplitudes,
                                     double norm_tol = 1e-10);

    [[nodiscard]] int sites() const noexcept { return sites_; }
    [[nodiscard]] int env_dim() const noexcept { return env_dim_; }
    [[nodiscard]] int bath_dim() const noexcept { return 2 * env_dim_; }
    [[nodiscard]] std::size_t size() const noexcept { return amp_.size(); }

    [[nodiscard]] std::size_t index(int s, int c, int e) const noexcept {
        return static_cast<std::size_t>(e) +
               static_cast<std::size_t>(env_dim_) *
                   (static_cast<std::size_t>(c) + 2U * static_cast<std::size_t>(s));
    }

    [[nodiscard]] Complex &at(int s, int c, int e) { return amp_[index(s, c, e)]; }
    [[nodiscard]] const Complex &at(int s, int c, int e) const {
        return amp_[index(s, c, e)];
    }

    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amp_; }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept {
        return amp_;
    }

    [[nodiscard]] double norm() const;

    /// Probability of each site, summed over coin and environment.
    [[nodiscard]] std::vector<double> site_probabilities() const;

    friend bool operator==(const PureState &, const PureState &) = default;

  private:
    int sites_;
    int env_dim_;
    std::vector<Complex> amp_;
};

/// Product state |s0>|c0>|eps0> of the model.
PureState init_state(const WalkModel &model);

/**
 * Raw nonlocal step on amplitude buffers: coin on every (s, e) pair, E_c on
 * every (s, c) block, then the conditional cyclic shift (c = 0 moves to
 * s - 1, c = 1 to s + 1). `scratch` must have the same length as `in`;
 * `in` and `out` must not alias. O(d_S d_E^2) work.
 */
void apply_nonlocal_step(std::span<const Complex> in, std::span<Complex> out,
                         std::span<Complex> scratch, int sites,
                         const Matrix2c &coin, const CMatrix &e0,
                         const CMatrix &e1);

/// Raw local step on amplitude buffers; env dimension is 2^sites. O(d_S 2^d_S).
void apply_local_step(std::span<const Complex> in, std::span<Complex> out,
                      int sites, const Matrix2c &coin, const Matrix2c &g0,
                      const Matrix2c &g1);

PureState step_nonlocal(const PureState &state, const Matrix2c &coin,
                        const CMatrix &e0, const CMatrix &e1);

PureState step_local(const PureState &state, const Matrix2c &coin,
                     const Matrix2c &g0, const Matrix2c &g1);

/**
 * Repeated stepping for one model with preallocated buffers. The model is
 * copied in; the stepper owns its scratch space and is not thread-safe.
 */
class Stepper {
  public:
    explicit Stepper(WalkModel model);

    [[nodiscard]] const WalkModel &model() const noexcept { return model_; }

    void advance(PureState &state);

    /// Single step on raw buffers of length 2 * d_S * d_E.
    void apply(std::span<const Complex> in, std::span<Complex> out);

  private:
    WalkModel model_;
    std::vector<Complex> next_;
    std::vector<Complex> scratch_;
};

using StepObserver = std::function<void(long t, const PureState &state)>;

/**
 * Evolves init_state(model) for `steps` steps, calling `observer` at every
 * t = 0..steps. Exceptions thrown by the observer propagate.
 */
PureState evolve(const WalkModel &model, long steps,
                 const StepObserver &observer = {});

} // namespace envwalk
