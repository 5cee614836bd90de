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

#include "nitsim/model.hpp"

namespace nitsim::analytic {

/// Complex detunings Delta_j - i kappa_j / 2 of the NEM mode, the ion mode and the qubit.
struct EffectiveDetunings {
    complex dbar_a;
    complex dbar_b;
    complex dbar_q;
};

/// Stationary amplitudes <a>, <b>, <sigma_->.
struct SteadyState {
    complex a;
    complex b;
    complex sigma_minus;
};

/// Denominators with modulus below this are treated as a pole.
inline constexpr double kDefaultSingularityFloor = 1e-300;

EffectiveDetunings effective_detunings(const SystemParams& sys);

/// Common denominator g^2 dbar_a + lambda^2 dbar_q - dbar_a dbar_b dbar_q.
complex denominator(const SystemParams& sys);

/// Closed-form linear-response steady state under the single-phonon closure
/// <b sigma_z> = -<b>.
///
/// `sys` must be normalized. Throws SingularityError carrying delta_p when
/// |denominator| < `singularity_floor`.
SteadyState steady_state(const SystemParams& sys, double singularity_floor = kDefaultSingularityFloor);

/// Absorption convention: -Im<a>, positive for a decoupled cavity driven with real epsilon > 0.
inline double absorption(const SteadyState& s) noexcept { return -s.a.imag(); }

}  // namespace nitsim::analytic
