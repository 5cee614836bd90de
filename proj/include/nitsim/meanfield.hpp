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

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "nitsim/model.hpp"
#include "nitsim/ode.hpp"

namespace nitsim::meanfield {

/// Mean amplitudes (<a>, <b>, <sigma_->) at time t (units of 1/kappa_a).
struct MeanFieldState {
    complex a{};
    complex b{};
    complex sigma_minus{};
    double t = 0.0;
};

/// Time derivative of the amplitudes; `t` is unused.
struct Derivative {
    complex a{};
    complex b{};
    complex sigma_minus{};
};

/// Right-hand side of the closed mean-field equations
///   da/dt = -i dbar_a a - i eps + i lambda b
///   db/dt = -i dbar_b b + i lambda a - i g sigma
///   dsigma/dt = -i dbar_q sigma - i g b
/// which is affine: d/dt x = J x + f with f = (-i eps, 0, 0).
Derivative rhs(const MeanFieldState& s, const SystemParams& sys);

/// The 3x3 linear part J of rhs, acting on (a, b, sigma_-).
Eigen::Matrix3cd system_matrix(const SystemParams& sys);

/// Slowest decay rate, -max Re(eig J).
double slowest_decay_rate(const SystemParams& sys);

/// Adaptive integration from s0 to t_end. The trajectory holds s0 and every accepted step.
///
/// Requires t_end > 0 and both tolerances in (0, 1e-2]. Throws StiffnessError when the
/// step size falls below 1e-14 t_end.
std::vector<MeanFieldState> integrate(const MeanFieldState& s0, const SystemParams& sys, double t_end,
                                      double rel_tol, double abs_tol);

struct RelaxOptions {
    double max_time = 1e5;  ///< budget in units of 1/kappa_a
    double rel_tol = 1e-12;
    double abs_tol = 1e-15;
};

/// Integrates from the zero state until |rhs| < tol |eps|. Requires kappa_a, kappa_b and
/// kappa_q all strictly positive. Throws ConvergenceError (with the slowest decay rate of J)
/// when max_time is exhausted.
MeanFieldState relax_to_steady_state(const SystemParams& sys, double tol, const RelaxOptions& options = {});

/// Same, starting from an arbitrary state.
MeanFieldState relax_to_steady_state(const MeanFieldState& s0, const SystemParams& sys, double tol,
                                     const RelaxOptions& options = {});

}  // namespace nitsim::meanfield
