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

#include "envwalk/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <limits>

namespace envwalk {

double spectral_norm(const CMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::BDCSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

double unitarity_error(const CMatrix &u) {
    if (u.rows() != u.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    // U^dag U - I is Hermitian, so its spectral norm is its largest |eigenvalue|.
    CMatrix d = u.adjoint() * u;
    d.diagonal().array() -= 1.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(d, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        return std::numeric_limits<double>::infinity();
    }
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

} // namespace envwalk
