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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "nitsim/errors.hpp"

namespace nitsim::ode {

struct Tolerances {
    double rel = 1e-8;
    double abs = 1e-12;
};

struct Stats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    double last_step = 0.0;
};

/// Integrates dx/dt = f(x, t) from t0 to t1 with the embedded Dormand-Prince 5(4) pair.
///
/// Steps land exactly on t1. After each accepted step `on_step(x, t)` is called;
/// it may modify `x` in place (the stepper cache is reset when it returns true).
/// Throws StiffnessError when the step size drops below `underflow_fraction * (t1 - t0)`.
template <class State, class System, class OnStep>
Stats integrate(System&& f, State& x, double t0, double t1, const Tolerances& tol, OnStep&& on_step,
                double initial_step = 0.0, double underflow_fraction = 1e-14) {
    namespace odeint = boost::numeric::odeint;
    using stepper_type = odeint::runge_kutta_dopri5<State>;
    auto stepper = odeint::make_controlled<stepper_type>(tol.abs, tol.rel);

    Stats stats;
    const double span = t1 - t0;
    const double min_step = underflow_fraction * span;
    double t = t0;
    double dt = initial_step > 0.0 ? initial_step : std::min(span, 1e-3 * span + 1e-6);
    auto system = [&f](const State& y, State& dydt, double tt) { f(y, dydt, tt); };

    while (t < t1) {
        const bool last = dt >= t1 - t;
        double step = last ? t1 - t : dt;
        const double t_before = t;
        const auto result = stepper.try_step(system, x, t, step);
        if (result == odeint::success) {
            if (last) {
                t = t1;
            }
            ++stats.accepted;
            stats.last_step = t - t_before;
            if (on_step(x, t)) {
                stepper.reset();
            }
            // try_step proposes the next step in `step`; keep the larger proposal after a
            // clamped final step so the cached size does not collapse.
            dt = last ? std::max(dt, step) : step;
        } else {
            ++stats.rejected;
            dt = step;
        }
        if (t < t1 && dt < min_step) {
            std::ostringstream msg;
            msg << "step size " << dt << " underflowed at t = " << t << " (floor " << min_step << ")";
            throw StiffnessError(t, dt, msg.str());
        }
    }
    return stats;
}

}  // namespace nitsim::ode
