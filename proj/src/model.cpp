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

#include "nitsim/model.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "nitsim/errors.hpp"

namespace nitsim {

namespace {

void require_finite(const char* name, double value) {
    if (!std::isfinite(value)) {
        throw DomainError(name, std::string(name) + " must be finite");
    }
}

void require_positive(const char* name, double value) {
    require_finite(name, value);
    if (!(value > 0.0)) {
        throw DomainError(name, std::string(name) + " must be > 0 (got " + std::to_string(value) + ")");
    }
}

void require_non_negative(const char* name, double value) {
    require_finite(name, value);
    if (value < 0.0) {
        throw DomainError(name, std::string(name) + " must be >= 0 (got " + std::to_string(value) + ")");
    }
}

}  // namespace

void SystemParams::validate() const {
    require_finite("delta_p", delta_p);
    require_finite("delta_b_offset", delta_b_offset);
    require_finite("delta_q_offset", delta_q_offset);
    require_non_negative("lambda", lambda);
    require_non_negative("g", g);
    require_finite("epsilon", epsilon.real());
    require_finite("epsilon", epsilon.imag());
    require_positive("kappa_a", kappa_a);
    require_non_negative("kappa_b", kappa_b);
    require_non_negative("gamma", gamma);
    require_non_negative("gamma_phi", gamma_phi);
}

SystemParams normalize(const SystemParams& sys) {
    sys.validate();
    if (sys.kappa_a == 1.0) {
        return sys;
    }
    const double k = sys.kappa_a;
    SystemParams out = sys;
    out.delta_p /= k;
    out.delta_b_offset /= k;
    out.delta_q_offset /= k;
    out.lambda /= k;
    out.g /= k;
    out.epsilon /= k;
    out.kappa_a = 1.0;
    out.kappa_b /= k;
    out.gamma /= k;
    out.gamma_phi /= k;
    return out;
}

void PhysicalParams::validate() const {
    require_positive("d", d);
    require_positive("V0", V0);
    require_positive("C0", C0);
    require_positive("M", M);
    require_positive("m", m);
    require_positive("omega", omega);
    require_positive("nu", nu);
    require_positive("k_l", k_l);
    require_non_negative("Omega", Omega);
    require_positive("q_e", q_e);
    require_positive("k_c", k_c);
    require_positive("hbar", hbar);
}

double derive_lambda(const PhysicalParams& p) {
    p.validate();
    return p.k_c * p.q_e * p.V0 * p.C0 / (p.d * p.d * p.d * std::sqrt(p.m * p.M * p.nu * p.omega));
}

double lamb_dicke(const PhysicalParams& p) {
    p.validate();
    return p.k_l * std::sqrt(p.hbar / (2.0 * p.m * p.nu));
}

double derive_g(const PhysicalParams& p) {
    const double eta = lamb_dicke(p);
    if (eta >= kLambDickeWarnThreshold) {
        std::clog << "warning: Lamb-Dicke parameter " << eta
                  << " is not small; the linearized sideband coupling may be inaccurate\n";
    }
    return eta * p.Omega;
}

}  // namespace nitsim
