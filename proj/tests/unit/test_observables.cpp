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

#include "catch_amalgamated.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "envwalk/environment.hpp"
#include "envwalk/errors.hpp"
#include "envwalk/observables.hpp"
#include "envwalk/walk.hpp"
#include "oracles.hpp"

using namespace envwalk;
using namespace envwalk::testing;
using Catch::Approx;

namespace {

DensityMatrix random_density(std::mt19937_64 &rng, Eigen::Index dim, Eigen::Index rank) {
    CMatrix a(dim, rank);
    for (Eigen::Index k = 0; k < rank; ++k) {
        a.col(k) = random_vector(rng, dim, false);
    }
    CMatrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(rho);
}

DensityMatrix projector(Eigen::Index dim, Eigen::Index k) {
    CMatrix m = CMatrix::Zero(dim, dim);
    m(k, k) = 1.0;
    return DensityMatrix(m);
}

WalkModel nonlocal_model(int sites, int d_e, std::uint64_t seed) {
    RngStream rng(seed);
    WalkModel m;
    m.sites = sites;
    m.initial_site = sites / 2;
    m.environment = sample_nonlocal_environment(d_e, 1.0, rng);
    return m;
}

WalkModel local_model(int sites) {
    WalkModel m;
    m.sites = sites;
    m.initial_site = sites / 2;
    m.environment = LocalEnvironment{make_local_gate({0.7, 0.2}), make_local_gate({1.1, 2.5})};
    return m;
}

} // namespace

TEST_CASE("DensityMatrix invariants", "[observables]") {
    REQUIRE_NOTHROW(DensityMatrix::maximally_mixed(7));
    CMatrix bad_trace = CMatrix::Identity(2, 2);
    REQUIRE_THROWS_AS(DensityMatrix(bad_trace), DomainError);
    CMatrix non_herm = CMatrix::Identity(2, 2) / 2.0;
    non_herm(0, 1) = 0.1;
    REQUIRE_THROWS_AS(DensityMatrix(non_herm), DomainError);
    CMatrix negative = CMatrix::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    REQUIRE_THROWS_AS(DensityMatrix(negative), DomainError);
}

TEST_CASE("reduce_to_position", "[observables]") {
    SECTION("product state reduces to a projector") {
        WalkModel m = nonlocal_model(5, 3, 1);
        m.initial_site = 3;
        const auto rho = reduce_to_position(init_state(m));
        REQUIRE((rho.matrix() - projector(5, 3).matrix()).cwiseAbs().maxCoeff() < 1e-15);
    }
    SECTION("entangled pair gives a half-half mixture") {
        PureState s(3, 2);
        const double h = 1.0 / std::sqrt(2.0);
        s.at(0, 0, 0) = h;
        s.at(1, 1, 1) = h;
        const auto rho = reduce_to_position(s);
        CMatrix expect = CMatrix::Zero(3, 3);
        expect(0, 0) = 0.5;
        expect(1, 1) = 0.5;
        REQUIRE((rho.matrix() - expect).cwiseAbs().maxCoeff() < 1e-15);
        REQUIRE(von_neumann_entropy(rho) == Approx(std::log(2.0)).margin(1e-14));
    }
    SECTION("walk states stay valid and trace one") {
        const WalkModel m = nonlocal_model(11, 6, 2);
        evolve(m, 300, [](long, const PureState &s) {
            const auto rho = reduce_to_position(s);
            REQUIRE(std::abs(rho.matrix().trace() - Complex(1.0, 0.0)) < 1e-12);
            REQUIRE_NOTHROW(rho.validate());
        });
    }
    SECTION("matches the definition on a random vector") {
        std::mt19937_64 rng(4);
        const int sites = 3;
        const int d_e = 2;
        const CVector psi = random_vector(rng, 2 * sites * d_e);
        const auto state = PureState::from_amplitudes(sites, d_e, to_std(psi));
        CMatrix expect = CMatrix::Zero(sites, sites);
        for (int s = 0; s < sites; ++s) {
            for (int t = 0; t < sites; ++t) {
                for (int c = 0; c < 2; ++c) {
                    for (int e = 0; e < d_e; ++e) {
                        expect(s, t) += state.at(s, c, e) * std::conj(state.at(t, c, e));
                    }
                }
            }
        }
        REQUIRE((reduce_to_position(state).matrix() - expect).cwiseAbs().maxCoeff() < 1e-15);
        CMatrix expect_sc = CMatrix::Zero(2 * sites, 2 * sites);
        for (int i = 0; i < 2 * sites; ++i) {
            for (int j = 0; j < 2 * sites; ++j) {
                for (int e = 0; e < d_e; ++e) {
                    expect_sc(i, j) += state.at(i / 2, i % 2, e) * std::conj(state.at(j / 2, j % 2, e));
                }
            }
        }
        REQUIRE((reduce_to_position_coin(state).matrix() - expect_sc).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("trace distance", "[observables]") {
    SECTION("examples") {
        std::mt19937_64 rng(1);
        const auto rho = random_density(rng, 4, 2);
        REQUIRE(trace_distance(rho, rho) == Approx(0.0).margin(1e-15));
        REQUIRE(trace_distance(projector(2, 0), projector(2, 1)) == Approx(1.0).margin(1e-15));
        REQUIRE(distance_to_uniform(projector(51, 25)) == Approx(50.0 / 51.0).margin(1e-14));
        REQUIRE(distance_to_uniform(DensityMatrix::maximally_mixed(51)) == Approx(0.0).margin(1e-15));
    }
    SECTION("localized walk state at t = 0") {
        const auto rho = reduce_to_position(init_state(nonlocal_model(51, 2, 3)));
        REQUIRE(distance_to_uniform(rho) == Approx(50.0 / 51.0).margin(1e-14));
        const auto obs = position_observables(init_state(nonlocal_model(51, 2, 3)));
        REQUIRE(obs.d_omega == Approx(50.0 / 51.0).margin(1e-14));
        REQUIRE(obs.entropy == Approx(0.0).margin(1e-12));
    }
    SECTION("metric properties on sampled triples") {
        std::mt19937_64 rng(8);
        for (int i = 0; i < 200; ++i) {
            const auto a = random_density(rng, 5, 1 + i % 5);
            const auto b = random_density(rng, 5, 1 + (i / 5) % 5);
            const auto c = random_density(rng, 5, 2);
            const double ab = trace_distance(a, b);
            REQUIRE(ab == trace_distance(b, a));
            REQUIRE(ab >= 0.0);
            REQUIRE(ab <= 1.0);
            REQUIRE(trace_distance(a, c) <= ab + trace_distance(b, c) + 1e-12);
        }
    }
    SECTION("dimension mismatch") {
        REQUIRE_THROWS_AS(trace_distance(projector(2, 0), projector(3, 0)), StructuralError);
    }
}

TEST_CASE("von Neumann entropy", "[observables]") {
    REQUIRE(von_neumann_entropy(projector(6, 2)) == Approx(0.0).margin(1e-15));
    REQUIRE(von_neumann_entropy(DensityMatrix::maximally_mixed(51)) ==
            Approx(std::log(51.0)).epsilon(1e-14));
    REQUIRE(std::log(51.0) == Approx(3.9318).margin(5e-5));
    CMatrix half = CMatrix::Zero(2, 2);
    half(0, 0) = 0.5;
    half(1, 1) = 0.5;
    REQUIRE(von_neumann_entropy(DensityMatrix(half)) == Approx(std::log(2.0)).epsilon(1e-14));

    SECTION("bounded by ln dim") {
        std::mt19937_64 rng(2);
        for (int i = 0; i < 50; ++i) {
            const double h = von_neumann_entropy(random_density(rng, 7, 1 + i % 7));
            REQUIRE(h >= 0.0);
            REQUIRE(h <= std::log(7.0) + 1e-9);
        }
    }
    SECTION("tiny negative eigenvalues are clamped, large ones rejected") {
        RVector ok(3);
        ok << 0.5, 0.5 + 5e-11, -5e-11;
        REQUIRE(entropy_from_eigenvalues(ok) == Approx(std::log(2.0)).margin(1e-9));
        RVector bad(2);
        bad << 1.0 + 1e-6, -1e-6;
        REQUIRE_THROWS_AS(entropy_from_eigenvalues(bad), DomainError);
    }
}

TEST_CASE("observables are invariant under site permutations", "[observables][property]") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const auto rho = random_density(rng, 7, 3);
        std::vector<int> perm(7);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        CMatrix p = CMatrix::Zero(7, 7);
        for (int i = 0; i < 7; ++i) {
            p(perm[i], i) = 1.0;
        }
        const DensityMatrix permuted(p * rho.matrix() * p.adjoint());
        REQUIRE(std::abs(von_neumann_entropy(permuted) - von_neumann_entropy(rho)) < 1e-12);
        REQUIRE(std::abs(distance_to_uniform(permuted) - distance_to_uniform(rho)) < 1e-12);
    }
}

TEST_CASE("Kraus generators", "[observables][kraus]") {
    SECTION("trivial environment gives the walk unitary") {
        WalkModel m;
        m.sites = 5;
        m.initial_site = 0;
        const auto kraus = kraus_generators(m, 3);
        REQUIRE(kraus.size() == 1);
        const CMatrix u = dense_nonlocal_unitary(5, hadamard_coin(), CMatrix::Identity(1, 1),
                                                 CMatrix::Identity(1, 1));
        const CMatrix u3 = u * u * u;
        REQUIRE((kraus[0] - u3).cwiseAbs().maxCoeff() < 1e-14);
        REQUIRE(kraus.completeness_error() < 1e-13);
    }
    SECTION("t = 0 gives overlaps times identity") {
        std::mt19937_64 rng(6);
        WalkModel m = nonlocal_model(3, 4, 4);
        m.initial_env = random_vector(rng, 4);
        const auto kraus = kraus_generators(m, 0);
        REQUIRE(kraus.size() == 4);
        for (std::size_t e = 0; e < 4; ++e) {
            const CMatrix expect = m.initial_env(static_cast<Eigen::Index>(e)) * CMatrix::Identity(6, 6);
            REQUIRE((kraus[e] - expect).cwiseAbs().maxCoeff() < 1e-15);
        }
        REQUIRE(kraus.completeness_error() < 1e-13);
    }
    SECTION("completeness for both models") {
        const WalkModel models[] = {nonlocal_model(5, 4, 7), local_model(5)};
        for (const auto &m : models) {
            for (long t : {0L, 1L, 5L, 10L, 50L}) {
                REQUIRE(kraus_generators(m, t).completeness_error() < 1e-8);
            }
        }
    }
    SECTION("channel output matches direct evolution") {
        const WalkModel models[] = {nonlocal_model(5, 4, 9), local_model(5)};
        for (const auto &m : models) {
            const auto rho0 = reduce_to_position_coin(init_state(m));
            const auto kraus = kraus_generators(m, 10);
            const auto via_channel = apply_cp_map(kraus, rho0);
            const auto direct = reduce_to_position_coin(evolve(m, 10));
            REQUIRE((via_channel.matrix() - direct.matrix()).cwiseAbs().maxCoeff() < 1e-9);
            REQUIRE(std::abs(via_channel.matrix().trace() - Complex(1.0, 0.0)) < 1e-9);
        }
    }
    SECTION("identity channel") {
        std::mt19937_64 rng(10);
        const auto rho = random_density(rng, 4, 2);
        const KrausSet id({CMatrix::Identity(4, 4)});
        REQUIRE((apply_cp_map(id, rho).matrix() - rho.matrix()).cwiseAbs().maxCoeff() == 0.0);
        REQUIRE_THROWS_AS(apply_cp_map(id, random_density(rng, 3, 1)), StructuralError);
    }
    SECTION("size guard") {
        REQUIRE_THROWS_AS(kraus_generators(nonlocal_model(51, 41, 1), 1), SizeError);
    }
}

TEST_CASE("Page entropy", "[observables][page]") {
    REQUIRE(page_entropy(1, 7) == 0.0);
    REQUIRE(page_entropy(2, 2) == Approx(1.0 / 3.0).epsilon(1e-15));
    REQUIRE(std::abs(page_entropy(51, 1000000) - std::log(51.0)) < 1e-3);
    REQUIRE(page_entropy(51, 1000000) < std::log(51.0));
    REQUIRE_THROWS_AS(page_entropy(5, 4), DomainError);
    REQUIRE_THROWS_AS(page_entropy(0, 4), DomainError);
}

TEST_CASE("long-time walk entropy approaches the Page value", "[observables][page]") {
    const int sites = 11;
    const int d_e = 64;
    double acc = 0.0;
    long count = 0;
    evolve(nonlocal_model(sites, d_e, 2718), 3000, [&](long t, const PureState &s) {
        if (t >= 1500) {
            acc += position_observables(s).entropy;
            ++count;
        }
    });
    const double mean = acc / static_cast<double>(count);
    const double page = page_entropy(sites, 2 * d_e);
    REQUIRE(std::abs(mean - page) / page < 0.02);
}
