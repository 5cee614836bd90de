// Copyright 2026 The nit-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <random>

#include "nitsim/analytic.hpp"
#include "nitsim/errors.hpp"
#include "nitsim/meanfield.hpp"
#include "oracles.hpp"

using nitsim::SystemParams;
using nitsim::meanfield::MeanFieldState;
using complex = std::complex<double>;

namespace {

SystemParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SystemParams s;
    s.delta_p = 4.0 * u(rng) - 2.0;
    s.delta_b_offset = u(rng) - 0.5;
    s.delta_q_offset = u(rng) - 0.5;
    s.lambda = 1.5 * u(rng);
    s.g = 1.5 * u(rng);
    s.epsilon = {0.05 * u(rng), 0.05 * u(rng)};
    s.kappa_b = 0.2 * u(rng) + 1e-3;
    s.gamma = 0.2 * u(rng);
    s.gamma_phi = 0.2 * u(rng) + 1e-3;
    return s;
}

}  // namespace

TEST_CASE("system matrix matches the entry-by-entry assembly") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 100; ++trial) {
        const SystemParams s = random_params(rng);
        const Eigen::Matrix3cd j = nitsim::meanfield::system_matrix(s);
        CHECK((j - oracle::mean_field_matrix(s)).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("rhs is affine with the drive as the inhomogeneous term") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const SystemParams s = random_params(rng);
        const MeanFieldState x{{n(rng), n(rng)}, {n(rng), n(rng)}, {n(rng), n(rng)}, 0.0};
        const auto d = nitsim::meanfield::rhs(x, s);
        const Eigen::Vector3cd v(x.a, x.b, x.sigma_minus);
        const Eigen::Vector3cd expected =
            oracle::mean_field_matrix(s) * v + Eigen::Vector3cd(complex(0.0, -1.0) * s.epsilon, 0.0, 0.0);
        const double scale = expected.norm() + 1.0;
        CHECK(std::abs(d.a - expected(0)) < 1e-14 * scale);
        CHECK(std::abs(d.b - expected(1)) < 1e-14 * scale);
        CHECK(std::abs(d.sigma_minus - expected(2)) < 1e-14 * scale);
    }
}

TEST_CASE("a lone driven mode fills exponentially") {
    SystemParams s;
    s.epsilon = 0.03;
    const auto traj = nitsim::meanfield::integrate(MeanFieldState{}, s, 20.0, 1e-10, 1e-14);
    REQUIRE(traj.size() > 2);
    CHECK(traj.front().t == 0.0);
    CHECK(traj.back().t == doctest::Approx(20.0).epsilon(1e-15));
    for (const auto& p : traj) {
        const complex expected(0.0, -0.06 * (1.0 - std::exp(-0.5 * p.t)));
        CHECK(std::abs(p.a - expected) < 1e-9 * 0.06);
        CHECK(p.b == complex(0.0));
        CHECK(p.sigma_minus == complex(0.0));
    }
}

TEST_CASE("the generator is strictly stable when every linewidth is positive") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 1000; ++trial) {
        const SystemParams s = random_params(rng);
        CHECK(nitsim::meanfield::slowest_decay_rate(s) > 0.0);
    }
}

TEST_CASE("relaxation reaches the closed-form fixed point") {
    SystemParams s = oracle::symmetric_windows();
    for (double dp : {-1.2, -0.7, -0.3, 0.0, 0.25, 0.5, 0.9}) {
        s.delta_p = dp;
        const auto ss = nitsim::analytic::steady_state(s);
        const auto mf = nitsim::meanfield::relax_to_steady_state(s, 1e-10);
        CHECK(std::abs(mf.a - ss.a) < 1e-9 * std::abs(s.epsilon));
        CHECK(std::abs(mf.b - ss.b) < 1e-9 * std::abs(s.epsilon));
        CHECK(std::abs(mf.sigma_minus - ss.sigma_minus) < 1e-9 * std::abs(s.epsilon));
        CHECK(mf.t > 0.0);
    }
}

TEST_CASE("the fixed point does not depend on the initial state") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> n(0.0, 0.1);
    const SystemParams s = oracle::unequal_couplings();
    const auto reference = nitsim::meanfield::relax_to_steady_state(s, 1e-10);
    for (int trial = 0; trial < 5; ++trial) {
        const MeanFieldState x{{n(rng), n(rng)}, {n(rng), n(rng)}, {n(rng), n(rng)}, 0.0};
        const auto mf = nitsim::meanfield::relax_to_steady_state(x, s, 1e-10);
        CHECK(std::abs(mf.a - reference.a) < 1e-9 * std::abs(s.epsilon));
        CHECK(std::abs(mf.b - reference.b) < 1e-9 * std::abs(s.epsilon));
        CHECK(std::abs(mf.sigma_minus - reference.sigma_minus) < 1e-9 * std::abs(s.epsilon));
    }
}

TEST_CASE("argument validation") {
    const SystemParams s = oracle::symmetric_windows();
    CHECK_THROWS_AS(nitsim::meanfield::integrate(MeanFieldState{}, s, 1.0, 0.0, 1e-12), nitsim::DomainError);
    CHECK_THROWS_AS(nitsim::meanfield::integrate(MeanFieldState{}, s, 1.0, 1e-8, 0.1), nitsim::DomainError);
    CHECK_THROWS_AS(nitsim::meanfield::integrate(MeanFieldState{}, s, -1.0, 1e-8, 1e-12), nitsim::DomainError);

    SystemParams lossless = s;
    lossless.kappa_b = 0.0;
    CHECK_THROWS_AS(nitsim::meanfield::relax_to_steady_state(lossless, 1e-10), nitsim::DomainError);
}

TEST_CASE("an exhausted time budget reports the slowest rate") {
    const SystemParams s = oracle::symmetric_windows();
    nitsim::meanfield::RelaxOptions opts;
    opts.max_time = 5.0;
    try {
        nitsim::meanfield::relax_to_steady_state(s, 1e-12, opts);
        FAIL("expected ConvergenceError");
    } catch (const nitsim::ConvergenceError& e) {
        CHECK(e.slowest_rate() == doctest::Approx(nitsim::meanfield::slowest_decay_rate(s)));
    }
}

TEST_CASE("rhs vanishes at the fixed point and reduces to the drive at rest") {
    SystemParams s = oracle::symmetric_windows();
    s.delta_p = -0.35;
    const auto ss = nitsim::analytic::steady_state(s);
    const auto d = nitsim::meanfield::rhs({ss.a, ss.b, ss.sigma_minus, 0.0}, s);
    CHECK(std::abs(d.a) < 1e-12);
    CHECK(std::abs(d.b) < 1e-12);
    CHECK(std::abs(d.sigma_minus) < 1e-12);

    const auto d0 = nitsim::meanfield::rhs(MeanFieldState{}, s);
    CHECK(d0.a == complex(0.0, -0.03));
    CHECK(d0.b == complex(0.0));
    CHECK(d0.sigma_minus == complex(0.0));
}

TEST_CASE("the homogeneous part is linear over complex coefficients") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> n(0.0, 1.0);
    auto draw = [&]() { return MeanFieldState{{n(rng), n(rng)}, {n(rng), n(rng)}, {n(rng), n(rng)}, 0.0}; };
    for (int trial = 0; trial < 100; ++trial) {
        const SystemParams s = random_params(rng);
        const MeanFieldState x = draw(), y = draw();
        const complex alpha(n(rng), n(rng)), beta(n(rng), n(rng));
        const auto r0 = nitsim::meanfield::rhs(MeanFieldState{}, s);
        const auto rx = nitsim::meanfield::rhs(x, s);
        const auto ry = nitsim::meanfield::rhs(y, s);
        const MeanFieldState mix{alpha * x.a + beta * y.a, alpha * x.b + beta * y.b,
                                 alpha * x.sigma_minus + beta * y.sigma_minus, 0.0};
        const auto rm = nitsim::meanfield::rhs(mix, s);
        CHECK(std::abs((rm.a - r0.a) - (alpha * (rx.a - r0.a) + beta * (ry.a - r0.a))) < 1e-12);
        CHECK(std::abs((rm.b - r0.b) - (alpha * (rx.b - r0.b) + beta * (ry.b - r0.b))) < 1e-12);
        CHECK(std::abs((rm.sigma_minus - r0.sigma_minus) -
                       (alpha * (rx.sigma_minus - r0.sigma_minus) + beta * (ry.sigma_minus - r0.sigma_minus))) <
              1e-12);
    }
}

TEST_CASE("trajectories") {
    SystemParams s = oracle::symmetric_windows();
    s.delta_p = 0.2;
    const auto ss = nitsim::analytic::steady_state(s);
    const auto still = nitsim::meanfield::integrate({ss.a, ss.b, ss.sigma_minus, 0.0}, s, 50.0, 1e-10, 1e-14);
    for (const auto& p : still) {
        CHECK(std::abs(p.a - ss.a) < 1e-9 * std::abs(ss.a));
    }

    // The slowest mode decays at ~0.11 kappa_a, so 200 / kappa_a leaves ~4e-10 of the transient.
    const auto from_rest = nitsim::meanfield::integrate(MeanFieldState{}, s, 200.0, 1e-10, 1e-14);
    CHECK(std::abs(from_rest.back().a - ss.a) < 1e-6 * std::abs(ss.a));
    CHECK(std::abs(from_rest.back().sigma_minus - ss.sigma_minus) < 1e-6 * std::abs(ss.sigma_minus));
}

TEST_CASE("relaxation with broad linewidths and without drive") {
    SystemParams s = oracle::unequal_couplings();
    s.kappa_b = s.gamma = s.gamma_phi = 0.1;
    s.delta_p = 0.45;
    const auto mf = nitsim::meanfield::relax_to_steady_state(s, 1e-10);
    const auto ss = nitsim::analytic::steady_state(s);
    CHECK(std::abs(mf.a - ss.a) < 1e-9 * std::abs(ss.a));

    s.epsilon = 0.0;
    const auto zero = nitsim::meanfield::relax_to_steady_state(s, 1e-10);
    CHECK(zero.t == 0.0);
    CHECK(zero.a == complex(0.0));
}
