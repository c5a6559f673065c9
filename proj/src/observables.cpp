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

#include "envwalk/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "envwalk/environment.hpp"
#include "envwalk/errors.hpp"

namespace envwalk {

namespace {

RVector hermitian_eigenvalues(const CMatrix &m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw NumericalError("Hermitian eigensolver failed on a " + std::to_string(m.rows()) +
                             "x" + std::to_string(m.cols()) + " matrix");
    }
    return es.eigenvalues();
}

/// Lower triangle of B^dag B for B = `cols` columns of length `rows`.
CMatrix gram_lower(const Complex *data, Eigen::Index rows, Eigen::Index cols) {
    Eigen::Map<const CMatrix> b(data, rows, cols);
    CMatrix g = CMatrix::Zero(cols, cols);
    g.selfadjointView<Eigen::Lower>().rankUpdate(b.adjoint());
    return g;
}

CMatrix full_from_lower(CMatrix g) {
    g.triangularView<Eigen::StrictlyUpper>() = g.adjoint().triangularView<Eigen::StrictlyUpper>();
    return g;
}

} // namespace

DensityMatrix::DensityMatrix(CMatrix m, double tol) : m_(std::move(m)) { validate(tol); }

DensityMatrix DensityMatrix::trusted(CMatrix m) { return {std::move(m), TrustedTag{}}; }

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
    if (dim < 1) {
        throw DomainError("density matrix dimension must be positive");
    }
    return trusted(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

RVector DensityMatrix::eigenvalues() const { return hermitian_eigenvalues(m_); }

void DensityMatrix::validate(double tol) const {
    if (m_.rows() != m_.cols() || m_.rows() < 1) {
        throw StructuralError("density matrix must be square and non-empty");
    }
    const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol) {
        throw DomainError("density matrix is not Hermitian (deviation " +
                          std::to_string(herm) + ")");
    }
    const Complex tr = m_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tol) {
        throw DomainError("density matrix trace is " + std::to_string(tr.real()));
    }
    const double min_eig = eigenvalues().minCoeff();
    if (min_eig < -tol) {
        throw DomainError("density matrix has negative eigenvalue " + std::to_string(min_eig));
    }
}

DensityMatrix reduce_to_position(const PureState &state) {
    // Column s holds the contiguous (c, e) block of site s; rho_S = conj(B^dag B).
    CMatrix g = full_from_lower(
        gram_lower(state.amplitudes().data(), state.bath_dim(), state.sites()));
    return DensityMatrix::trusted(g.conjugate());
}

DensityMatrix reduce_to_position_coin(const PureState &state) {
    CMatrix g = full_from_lower(
        gram_lower(state.amplitudes().data(), state.env_dim(), 2 * state.sites()));
    return DensityMatrix::trusted(g.conjugate());
}

double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.dim() != b.dim()) {
        throw StructuralError("trace distance of matrices with different dimensions");
    }
    // Fixed operand order so that D(a, b) == D(b, a) bit for bit.
    const auto less = [](const Complex &x, const Complex &y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    };
    const auto &ma = a.matrix();
    const auto &mb = b.matrix();
    const bool swap = std::lexicographical_compare(mb.data(), mb.data() + mb.size(), ma.data(),
                                                   ma.data() + ma.size(), less);
    const RVector mu = hermitian_eigenvalues(swap ? CMatrix(mb - ma) : CMatrix(ma - mb));
    return std::min(1.0, 0.5 * mu.cwiseAbs().sum());
}

double distance_to_uniform(const DensityMatrix &rho) {
    return trace_distance(rho, DensityMatrix::maximally_mixed(rho.dim()));
}

double entropy_from_eigenvalues(const RVector &eigenvalues) {
    double h = 0.0;
    for (const double raw : eigenvalues) {
        if (raw < -kEigenHardFailure) {
            throw DomainError("invalid density matrix: eigenvalue " + std::to_string(raw));
        }
        const double lambda = std::clamp(raw, 0.0, 1.0);
        if (lambda > 0.0) {
            h -= lambda * std::log(lambda);
        }
    }
    return h;
}

double von_neumann_entropy(const DensityMatrix &rho) {
    return entropy_from_eigenvalues(rho.eigenvalues());
}

PositionObservables position_observables(const PureState &state) {
    // Eigenvalues of conj(G) equal those of G.
    const CMatrix g = gram_lower(state.amplitudes().data(), state.bath_dim(), state.sites());
    const RVector lambda = hermitian_eigenvalues(g);
    const double uniform = 1.0 / static_cast<double>(state.sites());
    PositionObservables out;
    out.d_omega = std::min(1.0, 0.5 * (lambda.array() - uniform).abs().sum());
    out.entropy = entropy_from_eigenvalues(lambda);
    return out;
}

KrausSet::KrausSet(std::vector<CMatrix> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) {
        throw StructuralError("Kraus set must contain at least one operator");
    }
    const auto n = ops_.front().rows();
    for (const auto &op : ops_) {
        if (op.rows() != n || op.cols() != n) {
            throw StructuralError("Kraus operators must share one square shape");
        }
    }
}

double KrausSet::completeness_error() const {
    CMatrix sum = CMatrix::Zero(dim(), dim());
    for (const auto &x : ops_) {
        sum.noalias() += x.adjoint() * x;
    }
    sum.diagonal().array() -= 1.0;
    return hermitian_eigenvalues(sum).cwiseAbs().maxCoeff();
}

KrausSet kraus_generators(const WalkModel &model, long t) {
    model.validate();
    if (t < 0) {
        throw DomainError("Kraus extraction needs t >= 0");
    }
    const long d_e = model.env_dim();
    const long d_sc = 2L * model.sites;
    if (d_sc * d_e > kMaxKrausDim) {
        throw SizeError("dense Kraus extraction limited to total dimension " +
                        std::to_string(kMaxKrausDim) + ", got " + std::to_string(d_sc * d_e));
    }
    CVector eps0 = model.initial_env.size() != 0 ? model.initial_env
                                                  : CVector::Unit(d_e, 0);
    std::vector<CMatrix> ops(static_cast<std::size_t>(d_e), CMatrix::Zero(d_sc, d_sc));
    Stepper stepper(model);
    const std::size_t n = static_cast<std::size_t>(d_sc * d_e);
    std::vector<Complex> cur(n);
    std::vector<Complex> next(n);
    for (long j = 0; j < d_sc; ++j) {
        std::fill(cur.begin(), cur.end(), Complex{});
        for (long e = 0; e < d_e; ++e) {
            cur[static_cast<std::size_t>(e + d_e * j)] = eps0(e);
        }
        for (long step = 0; step < t; ++step) {
            stepper.apply(cur, next);
            cur.swap(next);
        }
        for (long i = 0; i < d_sc; ++i) {
            for (long e = 0; e < d_e; ++e) {
                ops[static_cast<std::size_t>(e)](i, j) = cur[static_cast<std::size_t>(e + d_e * i)];
            }
        }
    }
    return KrausSet(std::move(ops));
}

DensityMatrix apply_cp_map(const KrausSet &kraus, const DensityMatrix &rho) {
    if (kraus.dim() != rho.dim()) {
        throw StructuralError("Kraus operators act on dimension " + std::to_string(kraus.dim()) +
                              ", density matrix has " + std::to_string(rho.dim()));
    }
    CMatrix out = CMatrix::Zero(rho.dim(), rho.dim());
    for (const auto &x : kraus.operators()) {
        out.noalias() += x * rho.matrix() * x.adjoint();
    }
    return DensityMatrix::trusted(std::move(out));
}

double page_entropy(long d_s, long d_b) {
    if (d_s < 1 || d_b < 1) {
        throw DomainError("page_entropy needs positive dimensions");
    }
    if (d_s > d_b) {
        throw DomainError("page_entropy assumes d_S <= d_B");
    }
    // Smallest terms first.
    double sum = 0.0;
    for (long k = d_s * d_b; k > d_b; --k) {
        sum += 1.0 / static_cast<double>(k);
    }
    return sum - static_cast<double>(d_s - 1) / (2.0 * static_cast<double>(d_b));
}

nlohmann::json density_to_json(const DensityMatrix &rho) {
    return {{"dim", rho.dim()}, {"entries", matrix_to_json(rho.matrix())}};
}

} // namespace envwalk
