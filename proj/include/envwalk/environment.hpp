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
 * Environment unitaries: exponentials of random Hermitian generators for the
 * nonlocal model, parametrized qubit gates for the local model, and the
 * commutator norm that measures how strongly the two branches disagree.
 */
#pragma once

#include <utility>

#include "json.hpp"

#include "envwalk/linalg.hpp"
#include "envwalk/rng.hpp"
#include "envwalk/walk.hpp"

namespace envwalk {

inline constexpr double kDefaultSpread = 1.0;

/// A complex matrix equal to its conjugate transpose (checked to 1e-14).
class HermitianMatrix {
  public:
    explicit HermitianMatrix(CMatrix m);

    [[nodiscard]] Eigen::Index dim() const noexcept { return m_.rows(); }
    [[nodiscard]] const CMatrix &matrix() const noexcept { return m_; }

  private:
    CMatrix m_;
};

/// Rotation angles of a local gate, canonicalized to theta in [0, pi], phi in [0, 2 pi).
struct GateAngles {
    double theta{0.0};
    double phi{0.0};

    /// Same gate matrix, canonical angles. Throws DomainError on non-finite input.
    static GateAngles canonical(double theta, double phi);
};

/**
 * Upper triangle sampled from `rng`, row by row: each off-diagonal entry
 * draws (re, im) uniform on [-spread, spread), each diagonal entry one real
 * uniform on the same interval. The lower triangle is the mirror conjugate.
 */
HermitianMatrix sample_hermitian(int dim, double spread, RngStream &rng);

/// exp(-i H) = V diag(exp(-i lambda)) V^dag from the eigendecomposition of H.
CMatrix exponentiate_hermitian(const HermitianMatrix &h);

/// [[cos t, -e^{-i p} sin t], [e^{i p} sin t, cos t]].
Matrix2c make_local_gate(const GateAngles &angles);

enum class MatrixNorm { Spectral, Frobenius };

/// ||AB - BA||.
double commutator_norm(const CMatrix &a, const CMatrix &b,
                       MatrixNorm norm = MatrixNorm::Spectral);

/// E0 then E1, each exp(-i H) with H from sample_hermitian on the same stream.
NonlocalEnvironment sample_nonlocal_environment(int env_dim, double spread,
                                                RngStream &rng);

/**
 * Gate pair with spectral commutator norm `gamma` (0 <= gamma <= 2 sin^2 theta):
 * both gates use `theta`; phi0 = 0 and phi1 = asin(gamma / (2 sin^2 theta)).
 * For two gates of this family ||[G0, G1]|| = 2 sin t0 sin t1 |sin(p1 - p0)|.
 */
std::pair<GateAngles, GateAngles> gate_angles_for_gamma(double gamma,
                                                        double theta = 0.7853981633974483);

// JSON: matrices are row-major arrays of rows of [re, im] pairs.
nlohmann::json matrix_to_json(const CMatrix &m);
CMatrix matrix_from_json(const nlohmann::json &j);

nlohmann::json environment_to_json(const Environment &env);
Environment environment_from_json(const nlohmann::json &j);

} // namespace envwalk
