# Copyright 2026 The nit-sim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Probe response of a nanomechanical resonator coupled to a trapped ion.

Rates and detunings are in units of the resonator linewidth kappa_a unless a
function says otherwise.
"""

from ._core import (
    ConfigError,
    ConvergenceError,
    DomainError,
    NitSimError,
    NumericalError,
    PhysicalParams,
    SingularityError,
    SystemParams,
    __version__,
    analyze_windows,
    dephasing_scan,
    derive_g,
    derive_lambda,
    lamb_dicke,
    lindblad_amplitude,
    relax,
    render_config,
    spectrum_svg,
    steady_state,
    sweep,
)

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "NitSimError",
    "NumericalError",
    "PhysicalParams",
    "SingularityError",
    "SystemParams",
    "__version__",
    "analyze_windows",
    "dephasing_scan",
    "derive_g",
    "derive_lambda",
    "lamb_dicke",
    "lindblad_amplitude",
    "relax",
    "render_config",
    "spectrum_svg",
    "steady_state",
    "sweep",
]
