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

#include "nitsim/meanfield.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "nitsim/analytic.hpp"
#include "nitsim/errors.hpp"

namespace nitsim::meanfield {

namespace {

using State = std::array<complex, 3>;
using namespace std::complex_literals;

struct Coefficients {
    complex da, db, dq, drive;
    double lambda, g;

    explicit Coefficients(const SystemParams& sys)
        : lambda(sys.lambda), g(sys.g) {
        const auto d = analytic::effective_detunings(sys);
        da = d.dbar_a;
        db = d.dbar_b;
        dq = d.dbar_q;
        drive = -1.0i * sys.epsilon;
    }

    void operator()(const State& x, State& dxdt) const {
        dxdt[0] = -1.0i * (da * x[0]) + drive + 1.0i * (lambda * x[1]);
        dxdt[1] = -1.0i * (db * x[1]) + 1.0i * (lambda * x[0]) - 1.0i * (g * x[2]);
        dxdt[2] = -1.0i * (dq * x[2]) - 1.0i * (g * x[1]);
    }
};

double norm(const State& x) {
    return std::sqrt(std::norm(x[0]) + std::norm(x[1]) + std::norm(x[2]));
}

void check_tolerance(const char* name, double value) {
    if (!(value > 0.0 && value <= 1e-2)) {
        throw DomainError(name, std::string(name) + " must lie in (0, 1e-2]");
    }
}

}  // namespace

Derivative rhs(const MeanFieldState& s, const SystemParams& sys) {
    const Coefficients c(sys);
    State dx;
    c(State{s.a, s.b, s.sigma_minus}, dx);
    return {dx[0], dx[1], dx[2]};
}

Eigen::Matrix3cd system_matrix(const SystemParams& sys) {
    const auto d = analytic::effective_detunings(sys);
    Eigen::Matrix3cd j;
    j << -1.0i * d.dbar_a, 1.0i * sys.lambda, 0.0,
         1.0i * sys.lambda, -1.0i * d.dbar_b, -1.0i * sys.g,
         0.0, -1.0i * sys.g, -1.0i * d.dbar_q;
    return j;
}

double slowest_decay_rate(const SystemParams& sys) {
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(system_matrix(sys), false);
    return -solver.eigenvalues().real().maxCoeff();
}

std::vector<MeanFieldState> integrate(const MeanFieldState& s0, const SystemParams& sys, double t_end,
                                      double rel_tol, double abs_tol) {
    if (!(t_end > 0.0)) {
        throw DomainError("t_end", "t_end must be > 0");
    }
    check_tolerance("rel_tol", rel_tol);
    check_tolerance("abs_tol", abs_tol);

    const Coefficients c(sys);
    State x{s0.a, s0.b, s0.sigma_minus};
    std::vector<MeanFieldState> trajectory;
    trajectory.push_back({x[0], x[1], x[2], s0.t});
    const double t0 = s0.t;
    ode::integrate(
        [&c](const State& y, State& dy, double) { c(y, dy); }, x, t0, t0 + t_end, {rel_tol, abs_tol},
        [&trajectory](const State& y, double t) {
            trajectory.push_back({y[0], y[1], y[2], t});
            return false;
        });
    return trajectory;
}

MeanFieldState relax_to_steady_state(const SystemParams& sys, double tol, const RelaxOptions& options) {
    return relax_to_steady_state(MeanFieldState{}, sys, tol, options);
}

MeanFieldState relax_to_steady_state(const MeanFieldState& s0, const SystemParams& sys, double tol,
                                     const RelaxOptions& options) {
    if (!(sys.kappa_a > 0.0 && sys.kappa_b > 0.0 && sys.kappa_q() > 0.0)) {
        throw DomainError("kappa", "relaxation requires kappa_a, kappa_b and kappa_q > 0");
    }
    if (!(tol > 0.0)) {
        throw DomainError("tol", "tol must be > 0");
    }
    const Coefficients c(sys);
    State x{s0.a, s0.b, s0.sigma_minus};
    auto residual = [&c](const State& y) {
        State dy;
        c(y, dy);
        return norm(dy);
    };
    double t = s0.t;
    const double drive = std::abs(sys.epsilon);
    const double initial = residual(x);
    // Undriven systems relax to zero; measure against the initial residual instead.
    const double target = tol * (drive > 0.0 ? drive : initial);
    if (initial == 0.0 || initial < target) {
        return {x[0], x[1], x[2], t};
    }

    // Integrate in chunks of a few slowest lifetimes and test the residual between chunks.
    const double rate = slowest_decay_rate(sys);
    const double chunk = std::clamp(4.0 / rate, 1.0, options.max_time);
    const double t_limit = s0.t + options.max_time;
    double step = 0.0;
    while (t < t_limit) {
        const double t_next = std::min(t + chunk, t_limit);
        const auto stats = ode::integrate(
            [&c](const State& y, State& dy, double) { c(y, dy); }, x, t, t_next,
            {options.rel_tol, options.abs_tol}, [](const State&, double) { return false; }, step);
        step = stats.last_step;
        t = t_next;
        if (residual(x) < target) {
            return {x[0], x[1], x[2], t};
        }
    }
    std::ostringstream msg;
    msg << "mean-field relaxation did not converge within t = " << options.max_time
        << "; slowest decay rate of the linear system is " << rate;
    throw ConvergenceError(rate, msg.str());
}

}  // namespace nitsim::meanfield
