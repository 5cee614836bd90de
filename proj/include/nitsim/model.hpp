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

#include <complex>

namespace nitsim {

using complex = std::complex<double>;

/// Dimensionless working parameters of the driven NEM / ion-motion / qubit system.
///
/// Every rate-like field shares one unit. In normalized form that unit is the
/// NEM relaxation rate, so `kappa_a == 1`. Detunings of mode b and of the qubit
/// are measured relative to the probe detuning; zero offsets give the plain
/// three-mode model in which all detunings coincide.
struct SystemParams {
    double delta_p = 0.0;         ///< probe detuning, omega - omega_p
    double delta_b_offset = 0.0;  ///< extra detuning of the ion motional mode
    double delta_q_offset = 0.0;  ///< extra detuning of the qubit
    double lambda = 0.0;          ///< phonon-phonon coupling
    double g = 0.0;               ///< qubit-phonon (sideband) coupling
    complex epsilon{0.0, 0.0};    ///< drive amplitude on the NEM mode
    double kappa_a = 1.0;         ///< NEM relaxation rate
    double kappa_b = 0.0;         ///< ion-motion relaxation rate
    double gamma = 0.0;           ///< qubit relaxation rate
    double gamma_phi = 0.0;       ///< qubit dephasing rate

    /// Qubit coherence linewidth, kappa_q = 2 gamma_phi + gamma.
    double kappa_q() const noexcept { return 2.0 * gamma_phi + gamma; }

    double delta_b() const noexcept { return delta_p + delta_b_offset; }
    double delta_q() const noexcept { return delta_p + delta_q_offset; }

    /// Throws DomainError naming the first offending field.
    void validate() const;

    bool operator==(const SystemParams&) const = default;
};

/// Divides every rate-like field by kappa_a. Idempotent.
SystemParams normalize(const SystemParams& sys);

/// SI device parameters from which the couplings are derived.
///
/// Frequencies are angular (rad/s). Values quoted as ordinary frequencies must be
/// multiplied by 2*pi before they are stored here.
struct PhysicalParams {
    double d = 0.0;        ///< equilibrium ion-NEM separation [m]
    double V0 = 0.0;       ///< bias voltage [V]
    double C0 = 0.0;       ///< gate capacitance [F]
    double M = 0.0;        ///< NEM mass [kg]
    double m = 0.0;        ///< ion mass [kg]
    double omega = 0.0;    ///< NEM angular frequency [rad/s]
    double nu = 0.0;       ///< ion motional angular frequency [rad/s]
    double k_l = 0.0;      ///< laser wavenumber [1/m]
    double Omega = 0.0;    ///< carrier Rabi frequency [rad/s]
    double q_e = 1.602176634e-19;  ///< elementary charge [C]
    double k_c = 8.9875517923e9;   ///< Coulomb constant [N m^2 / C^2]
    double hbar = 1.054571817e-34; ///< reduced Planck constant [J s]

    /// All fields must be strictly positive, except Omega which may be zero.
    void validate() const;

    bool operator==(const PhysicalParams&) const = default;
};

/// Phonon-phonon coupling k_c q_e V0 C0 / (d^3 sqrt(m M nu omega)) [rad/s].
double derive_lambda(const PhysicalParams& p);

/// Lamb-Dicke parameter k_l sqrt(hbar / (2 m nu)).
double lamb_dicke(const PhysicalParams& p);

/// Sideband coupling g = eta * Omega [rad/s]. Warns on std::clog when eta >= 0.1.
double derive_g(const PhysicalParams& p);

/// Above this Lamb-Dicke parameter the linearized ion-light coupling is flagged.
inline constexpr double kLambDickeWarnThreshold = 0.1;

}  // namespace nitsim
