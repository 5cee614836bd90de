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

#include "nitsim/analytic.hpp"

#include <cmath>
#include <sstream>

#include "nitsim/errors.hpp"

namespace nitsim::analytic {

EffectiveDetunings effective_detunings(const SystemParams& sys) {
    using namespace std::complex_literals;
    return EffectiveDetunings{
        sys.delta_p - 0.5i * sys.kappa_a,
        sys.delta_b() - 0.5i * sys.kappa_b,
        sys.delta_q() - 0.5i * sys.kappa_q(),
    };
}

complex denominator(const SystemParams& sys) {
    const auto [da, db, dq] = effective_detunings(sys);
    const double g2 = sys.g * sys.g;
    const double l2 = sys.lambda * sys.lambda;
    return g2 * da + l2 * dq - da * db * dq;
}

SteadyState steady_state(const SystemParams& sys, double singularity_floor) {
    const auto [da, db, dq] = effective_detunings(sys);
    const complex den = denominator(sys);
    if (!(std::abs(den) >= singularity_floor)) {
        std::ostringstream msg;
        msg << "steady-state denominator vanishes at delta_p = " << sys.delta_p;
        throw SingularityError(sys.delta_p, msg.str());
    }
    const complex eps = sys.epsilon;
    SteadyState s;
    s.a = eps * (db * dq - sys.g * sys.g) / den;
    s.b = eps * sys.lambda * dq / den;
    // dbar_q <sigma_-> = -g <b>, written so that the sign follows from the equation of motion.
    s.sigma_minus = -sys.g * (eps * sys.lambda / den);
    return s;
}

}  // namespace nitsim::analytic
