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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nitsim/config.hpp"
#include "nitsim/quantum.hpp"

namespace nitsim::run {

enum ExitCode : int { kSuccess = 0, kConfigError = 2, kNumericalError = 3, kIoError = 4 };

/// One detuning of the cross-backend check.
struct ValidationRow {
    double delta_p = 0.0;
    complex analytic{};
    complex meanfield{};
    complex quantum{};
    complex quantum_b{};
    complex quantum_b_sigma_z{};
    double meanfield_abs_error = 0.0;    ///< |<a>_analytic - <a>_meanfield|
    double quantum_rel_error = 0.0;      ///< |<a>_analytic - <a>_quantum| / |<a>_analytic|
    double closure_error = 0.0;          ///< |<b sz> + <b>| / |<b>| in the Lindblad steady state
    double residual_ratio = 0.0;         ///< ||L rho|| / max|L|
    quantum::DensityMatrixChecks checks;
};

struct ValidationThresholds {
    double meanfield_abs = 1e-6;
    double quantum_rel = 0.02;
    double closure = 0.05;
    double residual_ratio = 1e-10;
};

struct ValidationReport {
    std::vector<ValidationRow> rows;
    ValidationThresholds thresholds;

    bool meanfield_ok() const;
    bool quantum_ok() const;
    bool closure_ok() const;
    bool lindblad_ok() const;
    bool passed() const { return meanfield_ok() && quantum_ok() && closure_ok() && lindblad_ok(); }
};

/// Evaluates all three backends at `points` uniformly spaced detunings in
/// [delta_min, delta_max], in parallel over `workers` threads.
ValidationReport validate_backends(const SystemParams& sys, double delta_min, double delta_max, int points,
                                   const quantum::HilbertSpec& spec, std::size_t workers = 1);

void print_validation(const ValidationReport& report, std::ostream& out);

/// Executes a parsed configuration, writing its artifacts and run.json into
/// cfg.output_dir. Progress goes to `out`, diagnostics to `err`. Returns an ExitCode.
int run(const config::RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Reads, parses and runs a config file; config errors map to kConfigError.
int run_file(const std::string& path, std::optional<config::Command> command, const std::optional<std::string>& out_dir,
             const std::optional<std::vector<std::string>>& formats, std::ostream& out, std::ostream& err);

}  // namespace nitsim::run
