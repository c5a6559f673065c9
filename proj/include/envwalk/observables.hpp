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
 * Reduced density matrices of the walker and the scalar diagnostics built
 * on them: trace distance, distance to the maximally mixed state, von
 * Neumann entropy, the Kraus form of the environment-induced channel, and
 * the average subsystem entropy of a random bipartite pure state.
 */
#pragma once

#include <cstddef>
#include <vector>

#include "json.hpp"

#include "envwalk/linalg.hpp"
#include "envwalk/walk.hpp"

namespace envwalk {

inline constexpr double kDensityTolerance = 1e-10;
inline constexpr double kEigenClampTolerance = 1e-10;
inline constexpr double kEigenHardFailure = 1e-8;
inline constexpr long kMaxKrausDim = 4096;

class DensityMatrix {
  public:
    /**
     * Checks Hermiticity, unit trace and eigenvalues >= -tol. Throws
     * DomainError on failure.
     */
    explicit DensityMatrix(CMatrix m, double tol = kDensityTolerance);

    /// Skips the checks; for matrices that are density matrices by construction.
    static DensityMatrix trusted(CMatrix m);

    static DensityMatrix maximally_mixed(Eigen::Index dim);

    [[nodiscard]] Eigen::Index dim() const noexcept { return m_.rows(); }
    [[nodiscard]] const CMatrix &matrix() const noexcept { return m_; }

    /// Ascending eigenvalues.
    [[nodiscard]] RVector eigenvalues() const;

    /// Re-runs the invariant checks.
    void validate(double tol = kDensityTolerance) const;

  private:
    struct TrustedTag {};
    DensityMatrix(CMatrix m, TrustedTag) : m_(std::move(m)) {}

    CMatrix m_;
};

/// rho_S = Tr_{C,E} |psi><psi|.
DensityMatrix reduce_to_position(const PureState &state);

/// rho_SC = Tr_E |psi><psi|, indexed by c + 2 s.
DensityMatrix reduce_to_position_coin(const PureState &state);

/// 1/2 sum |mu_k| over eigenvalues mu_k of rho1 - rho2.
double trace_distance(const DensityMatrix &a, const DensityMatrix &b);

/// Trace distance to I / dim.
double distance_to_uniform(const DensityMatrix &rho);

/// -sum lambda ln lambda in nats, with 0 ln 0 = 0.
double von_neumann_entropy(const DensityMatrix &rho);

/// Entropy of an eigenvalue list after the clamping check.
double entropy_from_eigenvalues(const RVector &eigenvalues);

struct PositionObservables {
    double d_omega{0.0};
    double entropy{0.0};
};

/**
 * Distance to uniform and entropy of rho_S from a single eigensolve. Since
 * omega is proportional to the identity, rho_S - omega has eigenvalues
 * lambda_k - 1/d_S.
 */
PositionObservables position_observables(const PureState &state);

/// Kraus operators X_e on system (x) coin, ordered by environment index e.
class KrausSet {
  public:
    explicit KrausSet(std::vector<CMatrix> ops);

    [[nodiscard]] std::size_t size() const noexcept { return ops_.size(); }
    [[nodiscard]] Eigen::Index dim() const noexcept { return ops_.front().rows(); }
    [[nodiscard]] const std::vector<CMatrix> &operators() const noexcept { return ops_; }
    [[nodiscard]] const CMatrix &operator[](std::size_t e) const { return ops_[e]; }

    /// Spectral norm of sum_e X_e^dag X_e - I.
    [[nodiscard]] double completeness_error() const;

  private:
    std::vector<CMatrix> ops_;
};

/**
 * X_e = (1_SC (x) <e|) U^t (1_SC (x) |eps0>), assembled column by column from
 * the evolution of each system-coin basis vector. Throws SizeError when
 * 2 d_S d_E exceeds kMaxKrausDim.
 */
KrausSet kraus_generators(const WalkModel &model, long t);

/// sum_e X_e rho X_e^dag.
DensityMatrix apply_cp_map(const KrausSet &kraus, const DensityMatrix &rho);

/// sum_{k = d_B + 1}^{d_S d_B} 1/k - (d_S - 1) / (2 d_B), for 1 <= d_S <= d_B.
double page_entropy(long d_s, long d_b);

nlohmann::json density_to_json(const DensityMatrix &rho);

} // namespace envwalk
