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

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "envwalk/environment.hpp"
#include "envwalk/errors.hpp"
#include "envwalk/snapshot.hpp"
#include "envwalk/walk.hpp"
#include "oracles.hpp"

using namespace envwalk;
using namespace envwalk::testing;
using Catch::Approx;

namespace {

WalkModel bare_model(int sites, int start, Vector2c coin0) {
    WalkModel m;
    m.sites = sites;
    m.initial_site = start;
    m.initial_coin = coin0;
    return m;
}

WalkModel random_nonlocal_model(int sites, int d_e, std::uint64_t seed) {
    RngStream rng(seed);
    WalkModel m;
    m.sites = sites;
    m.initial_site = sites / 2;
    m.environment = sample_nonlocal_environment(d_e, 1.0, rng);
    return m;
}

double max_abs_diff(const std::vector<double> &a, const std::vector<double> &b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

} // namespace

TEST_CASE("init_state builds the product state", "[core_sim]") {
    SECTION("basis state sits at flat index 0") {
        const auto state = init_state(bare_model(3, 0, Vector2c(1.0, 0.0)));
        REQUIRE(state.size() == 6);
        REQUIRE(state.amplitudes()[0] == Complex(1.0, 0.0));
        for (std::size_t i = 1; i < state.size(); ++i) {
            REQUIRE(state.amplitudes()[i] == Complex(0.0, 0.0));
        }
    }
    SECTION("coin superposition at the centre of 51 sites") {
        const auto state = init_state(bare_model(51, 25, plus_i_coin()));
        const double h = 1.0 / std::sqrt(2.0);
        REQUIRE(std::abs(state.at(25, 0, 0) - Complex(h, 0.0)) < 1e-15);
        REQUIRE(std::abs(state.at(25, 1, 0) - Complex(0.0, h)) < 1e-15);
        int nonzero = 0;
        for (const auto &a : state.amplitudes()) {
            nonzero += std::abs(a) > 0.0 ? 1 : 0;
        }
        REQUIRE(nonzero == 2);
        REQUIRE(std::abs(state.norm() - 1.0) < 1e-12);
    }
    SECTION("environment vector is tensored in") {
        WalkModel m = random_nonlocal_model(5, 4, 3);
        std::mt19937_64 rng(5);
        m.initial_env = random_vector(rng, 4);
        const auto state = init_state(m);
        REQUIRE(std::abs(state.norm() - 1.0) < 1e-12);
        REQUIRE(std::abs(state.at(2, 1, 3) - m.initial_coin(1) * m.initial_env(3)) < 1e-15);
    }
}

TEST_CASE("model validation rejects bad configurations", "[core_sim]") {
    REQUIRE_THROWS_AS(init_state(bare_model(4, 0, plus_i_coin())), ConfigError);
    REQUIRE_THROWS_AS(init_state(bare_model(0, 0, plus_i_coin())), ConfigError);
    REQUIRE_THROWS_AS(init_state(bare_model(5, 0, Vector2c(1.0, 1.0))), ConfigError);
    REQUIRE_THROWS_AS(init_state(bare_model(5, 7, plus_i_coin())), ConfigError);

    WalkModel wrong_env = random_nonlocal_model(5, 4, 1);
    wrong_env.initial_env = CVector::Ones(4);
    REQUIRE_THROWS_AS(init_state(wrong_env), ConfigError);
    wrong_env.initial_env = CVector::Unit(3, 0);
    REQUIRE_THROWS_AS(init_state(wrong_env), ConfigError);

    WalkModel non_unitary = random_nonlocal_model(5, 4, 1);
    std::get<NonlocalEnvironment>(non_unitary.environment).e1 *= 1.01;
    REQUIRE_THROWS_AS(non_unitary.validate(), ConfigError);

    WalkModel mismatched = random_nonlocal_model(5, 4, 1);
    std::get<NonlocalEnvironment>(mismatched.environment).e1 = CMatrix::Identity(3, 3);
    REQUIRE_THROWS_AS(mismatched.validate(), StructuralError);

    WalkModel too_big;
    too_big.sites = 15;
    too_big.initial_site = 0;
    too_big.environment = LocalEnvironment{Matrix2c::Identity(), Matrix2c::Identity()};
    REQUIRE_THROWS_AS(too_big.validate(), ConfigError);
}

TEST_CASE("Hadamard walk without environment", "[core_sim]") {
    const WalkModel m = bare_model(5, 0, Vector2c(1.0, 0.0));
    const CMatrix id = CMatrix::Identity(1, 1);
    PureState state = init_state(m);

    state = step_nonlocal(state, m.coin, id, id);
    auto p = state.site_probabilities();
    REQUIRE(p[4] == Approx(0.5).margin(1e-15));
    REQUIRE(p[1] == Approx(0.5).margin(1e-15));
    REQUIRE(std::norm(state.at(4, 0, 0)) == Approx(0.5).margin(1e-15));
    REQUIRE(std::norm(state.at(1, 1, 0)) == Approx(0.5).margin(1e-15));

    state = step_nonlocal(state, m.coin, id, id);
    p = state.site_probabilities();
    REQUIRE(p[3] == Approx(0.25).margin(1e-15));
    REQUIRE(p[0] == Approx(0.5).margin(1e-15));
    REQUIRE(p[2] == Approx(0.25).margin(1e-15));
    REQUIRE(p[1] == Approx(0.0).margin(1e-15));
    REQUIRE(p[4] == Approx(0.0).margin(1e-15));
}

TEST_CASE("step_nonlocal checks dimensions", "[core_sim]") {
    const PureState state = init_state(random_nonlocal_model(5, 4, 2));
    const CMatrix id3 = CMatrix::Identity(3, 3);
    REQUIRE_THROWS_AS(step_nonlocal(state, hadamard_coin(), id3, id3), StructuralError);
    const CMatrix id4 = CMatrix::Identity(4, 4);
    REQUIRE_THROWS_AS(step_nonlocal(state, hadamard_coin(), id4, id3), StructuralError);
    REQUIRE_THROWS_AS(step_local(state, hadamard_coin(), Matrix2c::Identity(), Matrix2c::Identity()),
                      StructuralError);
}

TEST_CASE("structured steps match the dense unitary", "[core_sim][oracle]") {
    std::mt19937_64 rng(2024);
    SECTION("nonlocal") {
        for (int sites : {1, 3, 5}) {
            for (int d_e : {1, 2, 3, 4}) {
                const CMatrix e0 = random_unitary(rng, d_e);
                const CMatrix e1 = random_unitary(rng, d_e);
                const CMatrix coin = random_unitary(rng, 2);
                const CMatrix u = dense_nonlocal_unitary(sites, coin, e0, e1);
                REQUIRE(unitarity_error(u) < 1e-12);
                for (int trial = 0; trial < 5; ++trial) {
                    const CVector psi = random_vector(rng, u.rows());
                    const auto state = PureState::from_amplitudes(sites, d_e, to_std(psi));
                    const auto next = step_nonlocal(state, coin, e0, e1);
                    REQUIRE((to_eigen(next.amplitudes()) - u * psi).cwiseAbs().maxCoeff() < 1e-12);
                }
            }
        }
    }
    SECTION("local") {
        for (int sites : {1, 3, 5}) {
            const CMatrix g0 = random_unitary(rng, 2);
            const CMatrix g1 = random_unitary(rng, 2);
            const CMatrix coin = hadamard_coin();
            const CMatrix u = dense_local_unitary(sites, coin, g0, g1);
            REQUIRE(unitarity_error(u) < 1e-12);
            for (int trial = 0; trial < 5; ++trial) {
                const CVector psi = random_vector(rng, u.rows());
                const auto state = PureState::from_amplitudes(sites, 1 << sites, to_std(psi));
                const auto next = step_local(state, coin, g0, g1);
                REQUIRE((to_eigen(next.amplitudes()) - u * psi).cwiseAbs().maxCoeff() < 1e-12);
            }
        }
    }
}

TEST_CASE("steps are linear", "[core_sim][property]") {
    std::mt19937_64 rng(11);
    const int sites = 5;
    const int d_e = 3;
    const CMatrix e0 = random_unitary(rng, d_e);
    const CMatrix e1 = random_unitary(rng, d_e);
    const CMatrix g0 = random_unitary(rng, 2);
    const CMatrix g1 = random_unitary(rng, 2);
    const Matrix2c coin = hadamard_coin();
    std::uniform_real_distribution<double> ud(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Complex alpha(ud(rng), ud(rng));
        const Complex beta(ud(rng), ud(rng));
        for (const bool local : {false, true}) {
            const auto n = static_cast<Eigen::Index>(2 * sites * (local ? 1 << sites : d_e));
            const CVector a = random_vector(rng, n, false);
            const CVector b = random_vector(rng, n, false);
            const CVector mix = alpha * a + beta * b;
            std::vector<Complex> out_a(n), out_b(n), out_mix(n), scratch(n);
            auto step = [&](const CVector &in, std::vector<Complex> &out) {
                const auto span_in = std::span<const Complex>(in.data(), in.size());
                if (local) {
                    apply_local_step(span_in, out, sites, coin, g0, g1);
                } else {
                    apply_nonlocal_step(span_in, out, scratch, sites, coin, e0, e1);
                }
            };
            step(a, out_a);
            step(b, out_b);
            step(mix, out_mix);
            const CVector expect = alpha * to_eigen(out_a) + beta * to_eigen(out_b);
            REQUIRE((to_eigen(out_mix) - expect).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("norm is preserved over long runs", "[core_sim][property]") {
    SECTION("nonlocal d_S=51, d_B=64, 10^4 steps") {
        const WalkModel m = random_nonlocal_model(51, 32, 99);
        const PureState final_state = evolve(m, 10000);
        REQUIRE(std::abs(final_state.norm() - 1.0) < 1e-10);
    }
    SECTION("local d_S=5, theta=pi/4, 10^4 steps") {
        WalkModel m;
        m.sites = 5;
        m.initial_site = 2;
        m.environment = LocalEnvironment{make_local_gate({M_PI / 4, 0.0}),
                                         make_local_gate({M_PI / 4, M_PI / 2})};
        double worst = 0.0;
        evolve(m, 10000, [&](long, const PureState &s) {
            worst = std::max(worst, std::abs(s.norm() - 1.0));
        });
        REQUIRE(worst < 1e-10);
    }
}

namespace {

// Largest deviation of the site distribution from the environment-free walk at each t.
std::vector<double> commuting_deviation(int sites, long steps) {
    std::mt19937_64 rng(7);
    const CMatrix e0 = random_unitary(rng, 4);
    WalkModel with_env;
    with_env.sites = sites;
    with_env.initial_site = sites / 2;
    with_env.environment = NonlocalEnvironment{e0, e0 * e0};
    with_env.initial_env = random_vector(rng, 4);
    const WalkModel bare = bare_model(sites, sites / 2, plus_i_coin());

    std::vector<std::vector<double>> reference;
    evolve(bare, steps, [&](long, const PureState &s) { reference.push_back(s.site_probabilities()); });
    std::vector<double> dev;
    evolve(with_env, steps, [&](long t, const PureState &s) {
        dev.push_back(max_abs_diff(s.site_probabilities(), reference[static_cast<std::size_t>(t)]));
    });
    return dev;
}

} // namespace

TEST_CASE("commuting environments leave the spatial distribution unchanged", "[core_sim]") {
    SECTION("no winding: 401 sites, t <= 200") {
        const auto dev = commuting_deviation(401, 200);
        REQUIRE(*std::max_element(dev.begin(), dev.end()) < 1e-10);
    }
    SECTION("5 sites until opposite windings can interfere") {
        const auto dev = commuting_deviation(5, 5);
        REQUIRE(*std::max_element(dev.begin(), dev.end()) < 1e-10);
    }
    SECTION("5 sites: paths winding in opposite directions pick up different E0 powers") {
        const auto dev = commuting_deviation(5, 200);
        REQUIRE(*std::max_element(dev.begin(), dev.end()) > 1e-3);
    }
}

TEST_CASE("identity local gates reproduce the bare walk", "[core_sim]") {
    WalkModel local;
    local.sites = 5;
    local.initial_site = 2;
    local.environment = LocalEnvironment{Matrix2c::Identity(), Matrix2c::Identity()};
    const WalkModel bare = bare_model(5, 2, plus_i_coin());
    std::vector<std::vector<double>> reference;
    evolve(bare, 100, [&](long, const PureState &s) { reference.push_back(s.site_probabilities()); });
    double worst = 0.0;
    evolve(local, 100, [&](long t, const PureState &s) {
        worst = std::max(worst, max_abs_diff(s.site_probabilities(),
                                             reference[static_cast<std::size_t>(t)]));
    });
    REQUIRE(worst < 1e-10);
}

TEST_CASE("shifting the start site shifts the distribution", "[core_sim][property]") {
    const WalkModel base = random_nonlocal_model(7, 3, 21);
    for (int k : {1, 3, 6}) {
        WalkModel moved = base;
        moved.initial_site = (base.initial_site + k) % base.sites;
        std::vector<std::vector<double>> ref;
        evolve(base, 60, [&](long, const PureState &s) { ref.push_back(s.site_probabilities()); });
        double worst = 0.0;
        evolve(moved, 60, [&](long t, const PureState &s) {
            const auto p = s.site_probabilities();
            const auto &r = ref[static_cast<std::size_t>(t)];
            for (int site = 0; site < base.sites; ++site) {
                worst = std::max(worst, std::abs(p[(site + k) % base.sites] - r[site]));
            }
        });
        REQUIRE(worst < 1e-12);
    }
}

TEST_CASE("evolve contract", "[core_sim]") {
    const WalkModel m = random_nonlocal_model(5, 2, 4);
    SECTION("zero steps returns the initial state and observes t = 0 once") {
        std::vector<long> seen;
        const PureState s = evolve(m, 0, [&](long t, const PureState &) { seen.push_back(t); });
        REQUIRE(s == init_state(m));
        REQUIRE(seen == std::vector<long>{0});
    }
    SECTION("observer sees every step") {
        std::vector<long> seen;
        evolve(m, 5, [&](long t, const PureState &) { seen.push_back(t); });
        REQUIRE(seen == std::vector<long>{0, 1, 2, 3, 4, 5});
    }
    SECTION("deterministic") {
        REQUIRE(evolve(m, 50) == evolve(m, 50));
    }
    SECTION("observer errors propagate") {
        REQUIRE_THROWS_AS(evolve(m, 10,
                                 [](long t, const PureState &) {
                                     if (t == 3) {
                                         throw std::runtime_error("observer failed");
                                     }
                                 }),
                          std::runtime_error);
    }
    SECTION("negative steps") {
        REQUIRE_THROWS_AS(evolve(m, -1), DomainError);
    }
}

TEST_CASE("snapshots round-trip bit for bit", "[core_sim][io]") {
    const WalkModel m = random_nonlocal_model(5, 3, 8);
    const PureState s = evolve(m, 17);
    std::stringstream buf;
    write_snapshot(s, buf);
    std::string header;
    std::getline(buf, header);
    REQUIRE(header.find("\"layout\":\"e+d_E*(c+2s)\"") != std::string::npos);
    buf.seekg(0);
    REQUIRE(read_snapshot(buf) == s);

    std::stringstream truncated(buf.str().substr(0, buf.str().size() - 5));
    REQUIRE_THROWS_AS(read_snapshot(truncated), IoError);
}
