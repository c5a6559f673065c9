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

#include "envwalk/environment.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "envwalk/errors.hpp"

namespace envwalk {

HermitianMatrix::HermitianMatrix(CMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1) {
        throw StructuralError("Hermitian matrix must be square and non-empty");
    }
    const double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (dev > 1e-14) {
        throw DomainError("matrix is not Hermitian (max |M - M^dag| = " +
                          std::to_string(dev) + ")");
    }
}

GateAngles GateAngles::canonical(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi)) {
        throw DomainError("gate angles must be finite");
    }
    constexpr double two_pi = 2.0 * std::numbers::pi;
    // theta is 2 pi periodic; G(-theta, phi) == G(theta, phi + pi).
    double t = std::remainder(theta, two_pi);
    double p = phi;
    if (t < 0.0) {
        t = -t;
        p += std::numbers::pi;
    }
    p = std::fmod(p, two_pi);
    if (p < 0.0) {
        p += two_pi;
    }
    if (p >= two_pi) {
        p = 0.0;
    }
    return GateAngles{t, p};
}

HermitianMatrix sample_hermitian(int dim, double spread, RngStream &rng) {
    if (dim < 1) {
        throw DomainError("Hermitian dimension must be at least 1");
    }
    if (!(spread > 0.0) || !std::isfinite(spread)) {
        throw DomainError("spread must be a positive finite number");
    }
    CMatrix h(dim, dim);
    for (int i = 0; i < dim; ++i) {
        h(i, i) = Complex(rng.uniform(-spread, spread), 0.0);
        for (int j = i + 1; j < dim; ++j) {
            const double re = rng.uniform(-spread, spread);
            const double im = rng.uniform(-spread, spread);
            h(i, j) = Complex(re, im);
            h(j, i) = Complex(re, -im);
        }
    }
    return HermitianMatrix(std::move(h));
}

CMatrix exponentiate_hermitian(const HermitianMatrix &h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix());
    if (es.info() != Eigen::Success) {
        throw NumericalError("eigendecomposition of Hermitian generator failed (dim " +
                             std::to_string(h.dim()) + ", ||H||_max = " +
                             std::to_string(h.matrix().cwiseAbs().maxCoeff()) + ")");
    }
    const auto &v = es.eigenvectors();
    CVector phases(h.dim());
    for (Eigen::Index k = 0; k < h.dim(); ++k) {
        phases(k) = std::polar(1.0, -es.eigenvalues()(k));
    }
    return v * phases.asDiagonal() * v.adjoint();
}

Matrix2c make_local_gate(const GateAngles &angles) {
    const double c = std::cos(angles.theta);
    const double s = std::sin(angles.theta);
    Matrix2c g;
    g << Complex(c, 0.0), -std::polar(1.0, -angles.phi) * s,
        std::polar(1.0, angles.phi) * s, Complex(c, 0.0);
    return g;
}

double commutator_norm(const CMatrix &a, const CMatrix &b, MatrixNorm norm) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw StructuralError("commutator needs two square matrices of equal size");
    }
    const CMatrix comm = a * b - b * a;
    return norm == MatrixNorm::Spectral ? spectral_norm(comm) : comm.norm();
}

NonlocalEnvironment sample_nonlocal_environment(int env_dim, double spread,
                                                RngStream &rng) {
    NonlocalEnvironment env;
    env.e0 = exponentiate_hermitian(sample_hermitian(env_dim, spread, rng));
    env.e1 = exponentiate_hermitian(sample_hermitian(env_dim, spread, rng));
    return env;
}

std::pair<GateAngles, GateAngles> gate_angles_for_gamma(double gamma, double theta) {
    const double s = std::sin(theta);
    const double reach = 2.0 * s * s;
    if (!(gamma >= 0.0) || gamma > reach * (1.0 + 1e-12)) {
        throw DomainError("gamma " + std::to_string(gamma) +
                          " not reachable with theta " + std::to_string(theta));
    }
    const double dphi = std::asin(std::min(1.0, gamma / reach));
    return {GateAngles::canonical(theta, 0.0), GateAngles::canonical(theta, dphi)};
}

nlohmann::json matrix_to_json(const CMatrix &m) {
    auto rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw ConfigError("matrix JSON must be a non-empty array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto &row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw ConfigError("matrix JSON rows have unequal lengths");
        }
        for (Eigen::Index k = 0; k < cols; ++k) {
            const auto &entry = row[static_cast<std::size_t>(k)];
            if (entry.is_number()) {
                m(i, k) = Complex(entry.get<double>(), 0.0);
            } else if (entry.is_array() && entry.size() == 2) {
                m(i, k) = Complex(entry[0].get<double>(), entry[1].get<double>());
            } else {
                throw ConfigError("matrix entries must be numbers or [re, im] pairs");
            }
        }
    }
    return m;
}

nlohmann::json environment_to_json(const Environment &env) {
    if (const auto *nl = std::get_if<NonlocalEnvironment>(&env)) {
        return {{"kind", "nonlocal"},
                {"E0", matrix_to_json(nl->e0)},
                {"E1", matrix_to_json(nl->e1)}};
    }
    const auto &local = std::get<LocalEnvironment>(env);
    return {{"kind", "local"},
            {"G0", matrix_to_json(local.g0)},
            {"G1", matrix_to_json(local.g1)}};
}

Environment environment_from_json(const nlohmann::json &j) {
    const auto kind = j.value("kind", std::string("nonlocal"));
    if (kind == "nonlocal") {
        return NonlocalEnvironment{matrix_from_json(j.at("E0")), matrix_from_json(j.at("E1"))};
    }
    if (kind == "local") {
        const CMatrix g0 = matrix_from_json(j.at("G0"));
        const CMatrix g1 = matrix_from_json(j.at("G1"));
        if (g0.rows() != 2 || g0.cols() != 2 || g1.rows() != 2 || g1.cols() != 2) {
            throw StructuralError("local gates must be 2x2");
        }
        return LocalEnvironment{g0, g1};
    }
    throw ConfigError("unknown environment kind '" + kind + "'");
}

} // namespace envwalk
