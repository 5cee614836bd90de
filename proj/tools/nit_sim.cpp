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

// nit-sim <command> --config <file> [--out <dir>] [--format csv,json,svg]

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nitsim/config.hpp"
#include "nitsim/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Nanomechanically induced transparency simulator"};
    app.set_version_flag("--version", std::string("nit-sim ") + NITSIM_VERSION);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::vector<std::string> formats;

    const std::vector<std::pair<const char*, const char*>> commands{
        {"steady", "steady-state amplitudes at the configured detuning"},
        {"sweep", "probe-detuning sweep: spectrum CSV, window report, SVG plot"},
        {"evolve", "time evolution with the mean-field or Lindblad backend"},
        {"validate", "cross-check analytic, mean-field and Lindblad backends at 11 detunings"},
        {"derive-coupling", "couplings lambda, eta and g from device parameters"},
        {"dephasing-scan", "central absorption versus qubit dephasing rate"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config,-c", config_path, "config file (or a previous run.json)")->required();
        sub->add_option("--out,-o", out_dir, "output directory (overrides [run].output_dir)");
        sub->add_option("--format,-f", formats, "output formats: csv, json, svg")->delimiter(',');
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : nitsim::run::kConfigError;
    }

    const auto* chosen = app.get_subcommands().front();
    const auto command = nitsim::config::command_from_string(chosen->get_name());
    const std::optional<std::string> out = out_dir.empty() ? std::nullopt : std::optional(out_dir);
    const std::optional<std::vector<std::string>> fmt = formats.empty() ? std::nullopt : std::optional(formats);
    return nitsim::run::run_file(config_path, command, out, fmt, std::cout, std::cerr);
}
