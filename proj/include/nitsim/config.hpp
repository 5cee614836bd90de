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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nitsim/errors.hpp"
#include "nitsim/model.hpp"
#include "nitsim/spectra.hpp"

namespace nitsim::config {

enum class Command { steady, sweep, evolve, validate, derive_coupling, dephasing_scan };

std::string_view to_string(Command command);
std::optional<Command> command_from_string(std::string_view name);

/// Unit system of a parameter block: rates in multiples of kappa_a, or SI (rad/s).
enum class Units { kappa_a, si };

struct SweepBlock {
    double delta_min = -1.5;
    double delta_max = 1.5;
    int n_points = 201;
    spectra::Backend backend = spectra::Backend::analytic;
    int n_a = 5;
    int n_b = 5;
    double meanfield_tol = 1e-10;

    bool operator==(const SweepBlock&) const = default;
};

struct EvolveBlock {
    spectra::Backend backend = spectra::Backend::meanfield;
    double t_end = 40.0;
    double tol = 1e-8;
    int n_a = 5;
    int n_b = 5;
    bool export_liouvillian = false;

    bool operator==(const EvolveBlock&) const = default;
};

struct DephasingScanBlock {
    std::vector<double> gamma_phi_values;

    bool operator==(const DephasingScanBlock&) const = default;
};

struct RunConfig {
    Command command = Command::steady;
    SystemParams system;
    Units system_units = Units::kappa_a;
    std::optional<PhysicalParams> physical;
    std::optional<SweepBlock> sweep;
    std::optional<EvolveBlock> evolve;
    std::optional<DephasingScanBlock> dephasing_scan;
    std::string output_dir = ".";
    std::vector<std::string> formats{"csv", "json"};
    /// Defaults filled in for keys the file left out; not part of equality.
    std::vector<std::string> assumptions;

    /// System parameters in units of kappa_a.
    SystemParams resolved_system() const { return normalize(system); }
    spectra::SweepConfig sweep_config() const;
    bool wants(std::string_view format) const;

    bool operator==(const RunConfig& other) const;
};

class ConfigError : public Error {
public:
    enum class Kind { syntax, unknown_block, unknown_key, duplicate_key, missing_block, missing_key, not_numeric, wrong_type, out_of_range };

    ConfigError(Kind kind, std::string key, int line, const std::string& what)
        : Error(what), kind_(kind), key_(std::move(key)), line_(line) {}

    Kind kind() const noexcept { return kind_; }
    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }  ///< 1-based; 0 when not tied to a line

private:
    Kind kind_;
    std::string key_;
    int line_;
};

/// Parses the block-structured key-value schema:
///
///     [run]            command, output_dir, formats
///     [system]         units, SystemParams fields
///     [physical]       units ("SI"), PhysicalParams fields
///     [sweep]          delta_min, delta_max, n_points, backend, n_a, n_b, meanfield_tol
///     [evolve]         backend, t_end, tol, n_a, n_b, export_liouvillian
///     [dephasing_scan] gamma_phi_values
///
/// Values are numbers, quoted strings, true/false, or single-line [a, b, ...] arrays;
/// `epsilon` may be a number or [re, im]. `#` starts a comment. Unknown keys and blocks
/// are errors. `command_override` (from the command line) replaces [run].command.
RunConfig parse_config(std::string_view text, std::optional<Command> command_override = std::nullopt);

/// Canonical text form; parse_config(render_config(cfg)) == cfg.
std::string render_config(const RunConfig& cfg);

/// Levenshtein distance, used for did-you-mean hints.
std::size_t edit_distance(std::string_view a, std::string_view b);

}  // namespace nitsim::config
