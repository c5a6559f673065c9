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
 * Common numeric aliases and small dense helpers.
 */
#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace envwalk {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;
using RVector = Eigen::VectorXd;

/// Largest singular value.
double spectral_norm(const CMatrix &m);

/// ||U^dagger U - I|| in the spectral norm.
double unitarity_error(const CMatrix &u);

inline bool is_unitary(const CMatrix &u, double tol = 1e-10) {
    return u.rows() == u.cols() && unitarity_error(u) < tol;
}

/// Kronecker product a (x) b.
CMatrix kron(const CMatrix &a, const CMatrix &b);

} // namespace envwalk
