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

#include "nitsim/run.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "nitsim/analytic.hpp"
#include "nitsim/format.hpp"
#include "nitsim/meanfield.hpp"
#include "nitsim/spectra.hpp"
#include "nitsim/svg.hpp"

namespace nitsim::run {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using config::Command;

namespace {

json complex_json(complex z) { return json::array({z.real(), z.imag()}); }

json system_json(const SystemParams& s) {
    return json{{"delta_p", s.delta_p},   {"delta_b_offset", s.delta_b_offset},
                {"delta_q_offset", s.delta_q_offset}, {"lambda", s.lambda},
                {"g", s.g},               {"epsilon", complex_json(s.epsilon)},
                {"kappa_a", s.kappa_a},   {"kappa_b", s.kappa_b},
                {"gamma", s.gamma},       {"gamma_phi", s.gamma_phi},
                {"kappa_q", s.kappa_q()}};
}

json physical_json(const PhysicalParams& p) {
    return json{{"d", p.d},       {"V0", p.V0},   {"C0", p.C0},   {"M", p.M},
                {"m", p.m},       {"omega", p.omega}, {"nu", p.nu}, {"k_l", p.k_l},
                {"Omega", p.Omega}, {"q_e", p.q_e}, {"k_c", p.k_c}, {"hbar", p.hbar}};
}

/// Collects the files of one run and writes them atomically enough for a CLI.
class OutputDir {
public:
    explicit OutputDir(const std::string& dir) : dir_(dir) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) {
            throw IoError("cannot create output directory '" + dir + "': " + ec.message());
        }
    }

    void write(const std::string& name, const std::string& content) {
        const fs::path path = dir_ / name;
        std::ofstream file(path, std::ios::binary);
        file << content;
        file.close();
        if (!file) {
            throw IoError("cannot write '" + path.string() + "'");
        }
        written_.push_back(name);
    }

    const std::vector<std::string>& written() const { return written_; }

private:
    fs::path dir_;
    std::vector<std::string> written_;
};

std::string trajectory_header() { return "t,re_a,im_a,re_b,im_b,re_sigma_minus,im_sigma_minus"; }

void append_row(std::ostringstream& csv, double t, complex a, complex b, complex sm,
                std::optional<double> trace = std::nullopt) {
    csv << format_double(t) << ',' << format_double(a.real()) << ',' << format_double(a.imag()) << ','
        << format_double(b.real()) << ',' << format_double(b.imag()) << ',' << format_double(sm.real()) << ','
        << format_double(sm.imag());
    if (trace) {
        csv << ',' << format_double(*trace);
    }
    csv << '\n';
}

json run_steady(const config::RunConfig& cfg, OutputDir& dir, std::ostream& out) {
    const SystemParams sys = cfg.resolved_system();
    const auto ss = analytic::steady_state(sys);
    json results{{"analytic", {{"a", complex_json(ss.a)},
                               {"b", complex_json(ss.b)},
                               {"sigma_minus", complex_json(ss.sigma_minus)},
                               {"absorption", analytic::absorption(ss)}}}};
    std::ostringstream csv;
    csv << "backend,quantity,re,im\n";
    auto row = [&csv](std::string_view backend, std::string_view q, complex z) {
        csv << backend << ',' << q << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
    };
    row("analytic", "a", ss.a);
    row("analytic", "b", ss.b);
    row("analytic", "sigma_minus", ss.sigma_minus);
    out << "delta_p/kappa_a = " << format_double(sys.delta_p, 6) << "\n";
    out << "  <a>       = " << format_double(ss.a.real(), 10) << " + " << format_double(ss.a.imag(), 10) << "i\n";
    out << "  <b>       = " << format_double(ss.b.real(), 10) << " + " << format_double(ss.b.imag(), 10) << "i\n";
    out << "  <sigma_-> = " << format_double(ss.sigma_minus.real(), 10) << " + "
        << format_double(ss.sigma_minus.imag(), 10) << "i\n";
    out << "  absorption -Im<a> = " << format_double(analytic::absorption(ss), 10) << "\n";

    if (cfg.sweep && cfg.sweep->backend != spectra::Backend::analytic) {
        const auto& w = *cfg.sweep;
        const complex a = spectra::steady_amplitude(sys, w.backend, {w.n_a, w.n_b}, w.meanfield_tol);
        const std::string name(spectra::to_string(w.backend));
        results[name] = {{"a", complex_json(a)}};
        row(name, "a", a);
        out << "  <a> (" << name << ") = " << format_double(a.real(), 10) << " + " << format_double(a.imag(), 10)
            << "i\n";
    }
    if (cfg.wants("csv")) {
        dir.write("steady.csv", csv.str());
    }
    if (cfg.wants("json")) {
        dir.write("steady.json", results.dump(2) + "\n");
    }
    return results;
}

json run_sweep(const config::RunConfig& cfg, OutputDir& dir, std::ostream& out, std::size_t workers) {
    const auto scfg = cfg.sweep_config();
    const auto spectrum = spectra::sweep(scfg, workers);
    json results{{"n_points", spectrum.size()}};
    if (cfg.wants("csv")) {
        dir.write("spectrum.csv", spectra::to_csv(spectrum));
    }
    if (spectrum.size() >= 51) {
        const auto report = spectra::analyze_windows(spectrum);
        results["peaks"] = report.peaks.size();
        results["dips"] = report.dips.size();
        results["asymmetry"] = report.asymmetry;
        if (cfg.wants("json")) {
            dir.write("windows.json", spectra::to_json(report) + "\n");
        }
        out << "peaks: " << report.peaks.size() << ", dips: " << report.dips.size()
            << ", asymmetry: " << format_double(report.asymmetry, 6) << "\n";
        for (const auto& p : report.peaks) {
            out << "  peak at " << format_fixed(p.detuning, 4) << " height " << format_double(p.height, 6)
                << " fwhm " << format_double(p.fwhm, 6) << "\n";
        }
        for (const auto& d : report.dips) {
            out << "  dip  at " << format_fixed(d.detuning, 4) << " value " << format_double(d.value, 6)
                << " relative depth " << format_double(d.relative_depth, 6) << "\n";
        }
    } else {
        out << "fewer than 51 points; window analysis skipped\n";
    }
    if (cfg.wants("svg")) {
        svg::Style style;
        style.title = "NIT spectrum (" + std::string(spectra::to_string(spectrum.backend)) + ")";
        dir.write("spectrum.svg", svg::emit_svg(spectrum, style));
    }
    return results;
}

json run_evolve(const config::RunConfig& cfg, OutputDir& dir, std::ostream& out) {
    const SystemParams sys = cfg.resolved_system();
    const auto& e = *cfg.evolve;
    std::ostringstream csv;
    csv << trajectory_header();
    json results;
    if (e.backend == spectra::Backend::meanfield) {
        csv << '\n';
        const auto traj = meanfield::integrate({}, sys, e.t_end, e.tol, e.tol);
        for (const auto& s : traj) {
            append_row(csv, s.t, s.a, s.b, s.sigma_minus);
        }
        const auto& last = traj.back();
        results = {{"steps", traj.size() - 1},
                   {"final", {{"a", complex_json(last.a)}, {"b", complex_json(last.b)},
                              {"sigma_minus", complex_json(last.sigma_minus)}}}};
        out << "integrated " << traj.size() - 1 << " steps to t = " << format_double(last.t, 8) << "\n";
        out << "  <a>(t_end) = " << format_double(last.a.real(), 10) << " + " << format_double(last.a.imag(), 10)
            << "i\n";
    } else {
        csv << ",trace\n";
        const quantum::HilbertSpec spec{e.n_a, e.n_b};
        const auto ops = quantum::cached_operators(spec);
        const auto l = quantum::build_liouvillian(sys, spec);
        if (e.export_liouvillian) {
            std::ostringstream mtx;
            quantum::write_matrix_market(l, mtx);
            dir.write("liouvillian.mtx", mtx.str());
        }
        const auto rho0 = quantum::DensityMatrix::basis_state(spec.dim(), spec.index(0, 0, 0));
        const auto result = quantum::evolve(rho0, l, e.t_end, e.tol, [&](double t, const quantum::DensityMatrix& rho) {
            append_row(csv, t, quantum::expectation(ops->a, rho), quantum::expectation(ops->b, rho),
                       quantum::expectation(ops->sigma_minus, rho), rho.trace().real());
        });
        std::ostringstream dm;
        quantum::write_density_csv(result.rho, dm);
        dir.write("density_matrix.csv", dm.str());
        const complex a = quantum::expectation(ops->a, result.rho);
        results = {{"steps", result.stats.steps.accepted},
                   {"max_trace_drift", result.stats.max_trace_drift},
                   {"max_hermiticity_drift", result.stats.max_hermiticity_drift},
                   {"min_eigenvalue", result.rho.min_eigenvalue()},
                   {"final", {{"a", complex_json(a)}}}};
        out << "integrated " << result.stats.steps.accepted << " steps; trace drift "
            << format_double(result.stats.max_trace_drift, 3) << "\n";
        out << "  <a>(t_end) = " << format_double(a.real(), 10) << " + " << format_double(a.imag(), 10) << "i\n";
    }
    if (cfg.wants("csv")) {
        dir.write("trajectory.csv", csv.str());
    }
    return results;
}

json run_validate(const config::RunConfig& cfg, OutputDir& dir, std::ostream& out, std::size_t workers,
                  bool& passed) {
    const config::SweepBlock w = cfg.sweep.value_or(config::SweepBlock{});
    const auto report =
        validate_backends(cfg.resolved_system(), w.delta_min, w.delta_max, 11, {w.n_a, w.n_b}, workers);
    print_validation(report, out);
    passed = report.passed();
    json rows = json::array();
    std::ostringstream csv;
    csv << "delta_p,meanfield_abs_error,quantum_rel_error,closure_error,residual_ratio,min_eigenvalue\n";
    for (const auto& r : report.rows) {
        rows.push_back({{"delta_p", r.delta_p},
                        {"analytic", complex_json(r.analytic)},
                        {"meanfield", complex_json(r.meanfield)},
                        {"quantum", complex_json(r.quantum)},
                        {"meanfield_abs_error", r.meanfield_abs_error},
                        {"quantum_rel_error", r.quantum_rel_error},
                        {"closure_error", r.closure_error},
                        {"residual_ratio", r.residual_ratio},
                        {"min_eigenvalue", r.checks.min_eigenvalue}});
        csv << format_double(r.delta_p) << ',' << format_double(r.meanfield_abs_error) << ','
            << format_double(r.quantum_rel_error) << ',' << format_double(r.closure_error) << ','
            << format_double(r.residual_ratio) << ',' << format_double(r.checks.min_eigenvalue) << '\n';
    }
    json results{{"passed", passed},
                 {"meanfield_ok", report.meanfield_ok()},
                 {"quantum_ok", report.quantum_ok()},
                 {"closure_ok", report.closure_ok()},
                 {"lindblad_ok", report.lindblad_ok()},
                 {"rows", rows}};
    if (cfg.wants("csv")) {
        dir.write("validation.csv", csv.str());
    }
    if (cfg.wants("json")) {
        dir.write("validation.json", results.dump(2) + "\n");
    }
    return results;
}

json run_derive_coupling(const config::RunConfig& cfg, OutputDir& dir, std::ostream& out) {
    const PhysicalParams& p = *cfg.physical;
    const double lambda = derive_lambda(p);
    const double eta = lamb_dicke(p);
    const double g = derive_g(p);
    const double two_pi = 2.0 * std::numbers::pi;
    json results{{"lambda_rad_per_s", lambda},   {"lambda_hz", lambda / two_pi}, {"eta", eta},
                 {"g_rad_per_s", g},             {"g_hz", g / two_pi}};
    out << "lambda = " << format_double(lambda, 8) << " rad/s (" << format_double(lambda / two_pi, 8) << " Hz)\n";
    out << "eta    = " << format_double(eta, 8) << "\n";
    out << "g      = " << format_double(g, 8) << " rad/s (" << format_double(g / two_pi, 8) << " Hz)\n";
    if (cfg.system_units == config::Units::si) {
        const double kappa_a = cfg.system.kappa_a;
        results["kappa_a_rad_per_s"] = kappa_a;
        results["lambda_over_kappa_a"] = lambda / kappa_a;
        results["g_over_kappa_a"] = g / kappa_a;
        out << "lambda/kappa_a = " << format_double(lambda / kappa_a, 8) << "\n";
        out << "g/kappa_a      = " << format_double(g / kappa_a, 8) << "\n";
    } else {
        out << "(give [system] units = \"SI\" with kappa_a in rad/s to express the couplings in kappa_a units)\n";
    }
    if (eta >= kLambDickeWarnThreshold) {
        results["warning"] = "Lamb-Dicke parameter is not small";
    }
    if (cfg.wants("json")) {
        dir.write("coupling.json", results.dump(2) + "\n");
    }
    return results;
}

json run_dephasing_scan(const config::RunConfig& cfg, OutputDir& dir, std::ostream& out) {
    const auto& values = cfg.dephasing_scan->gamma_phi_values;
    const auto heights = spectra::dephasing_scan(cfg.resolved_system(), values);
    std::ostringstream csv;
    csv << "gamma_phi,central_absorption\n";
    json rows = json::array();
    out << "gamma_phi/kappa_a   central absorption\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        csv << format_double(values[i]) << ',' << format_double(heights[i]) << '\n';
        rows.push_back({{"gamma_phi", values[i]}, {"central_absorption", heights[i]}});
        out << "  " << std::left << std::setw(18) << format_double(values[i], 6) << format_double(heights[i], 10)
            << "\n";
    }
    if (cfg.wants("csv")) {
        dir.write("dephasing.csv", csv.str());
    }
    if (cfg.wants("json")) {
        dir.write("dephasing.json", json{{"scan", rows}}.dump(2) + "\n");
    }
    return json{{"scan", rows}};
}

}  // namespace

bool ValidationReport::meanfield_ok() const {
    for (const auto& r : rows) {
        if (!(r.meanfield_abs_error < thresholds.meanfield_abs)) return false;
    }
    return true;
}

bool ValidationReport::quantum_ok() const {
    for (const auto& r : rows) {
        if (!(r.quantum_rel_error < thresholds.quantum_rel)) return false;
    }
    return true;
}

bool ValidationReport::closure_ok() const {
    for (const auto& r : rows) {
        if (!(r.closure_error < thresholds.closure)) return false;
    }
    return true;
}

bool ValidationReport::lindblad_ok() const {
    for (const auto& r : rows) {
        if (!(r.residual_ratio < thresholds.residual_ratio) || !r.checks.ok()) return false;
    }
    return true;
}

ValidationReport validate_backends(const SystemParams& sys, double delta_min, double delta_max, int points,
                                   const quantum::HilbertSpec& spec, std::size_t workers) {
    spectra::SweepConfig grid;
    grid.base = sys;
    grid.delta_min = delta_min;
    grid.delta_max = delta_max;
    grid.n_points = points;
    grid.validate();
    const auto ops = quantum::cached_operators(spec);
    const quantum::Operator b_sz{ops->b.matrix * ops->sigma_z.matrix, false};

    ValidationReport report;
    report.rows.resize(static_cast<std::size_t>(points));
    std::vector<std::exception_ptr> errors(report.rows.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (std::size_t i = next.fetch_add(1); i < report.rows.size(); i = next.fetch_add(1)) {
            try {
                ValidationRow& row = report.rows[i];
                SystemParams p = sys;
                p.delta_p = grid.detuning(static_cast<int>(i));
                row.delta_p = p.delta_p;
                row.analytic = analytic::steady_state(p).a;
                row.meanfield = meanfield::relax_to_steady_state(p, 1e-10).a;
                const auto l = quantum::build_liouvillian(p, spec);
                const auto ss = quantum::steady_state_dm(l);
                row.quantum = quantum::expectation(ops->a, ss.rho);
                row.quantum_b = quantum::expectation(ops->b, ss.rho);
                row.quantum_b_sigma_z = quantum::expectation(b_sz, ss.rho);
                row.meanfield_abs_error = std::abs(row.analytic - row.meanfield);
                row.quantum_rel_error = std::abs(row.analytic - row.quantum) / std::abs(row.analytic);
                row.closure_error = std::abs(row.quantum_b_sigma_z + row.quantum_b) / std::abs(row.quantum_b);
                row.residual_ratio = ss.residual / ss.generator_scale;
                row.checks = ss.checks;
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t count = std::clamp<std::size_t>(workers, 1, report.rows.size());
    if (count == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < count; ++w) {
            pool.emplace_back(work);
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return report;
}

void print_validation(const ValidationReport& report, std::ostream& out) {
    const auto& t = report.thresholds;
    out << std::left << std::setw(10) << "delta_p" << std::setw(16) << "|mf - an|" << std::setw(16)
        << "|q - an|/|an|" << std::setw(18) << "|<bsz>+<b>|/|<b>|" << std::setw(14) << "resid/maxL"
        << "status\n";
    for (const auto& r : report.rows) {
        const bool ok = r.meanfield_abs_error < t.meanfield_abs && r.quantum_rel_error < t.quantum_rel &&
                        r.closure_error < t.closure && r.residual_ratio < t.residual_ratio && r.checks.ok();
        out << std::left << std::setw(10) << format_fixed(r.delta_p, 3) << std::setw(16)
            << format_double(r.meanfield_abs_error, 3) << std::setw(16) << format_double(r.quantum_rel_error, 3)
            << std::setw(18) << format_double(r.closure_error, 3) << std::setw(14)
            << format_double(r.residual_ratio, 3) << (ok ? "PASS" : "FAIL") << "\n";
    }
    out << "analytic vs meanfield (< " << format_double(t.meanfield_abs, 3) << "): "
        << (report.meanfield_ok() ? "PASS" : "FAIL") << "\n";
    out << "analytic vs Lindblad (< " << format_double(t.quantum_rel, 3) << " relative): "
        << (report.quantum_ok() ? "PASS" : "FAIL") << "\n";
    out << "single-phonon closure (< " << format_double(t.closure, 3) << "): "
        << (report.closure_ok() ? "PASS" : "FAIL") << "\n";
    out << "Lindblad steady-state sanity: " << (report.lindblad_ok() ? "PASS" : "FAIL") << "\n";
}

int run(const config::RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    try {
        OutputDir dir(cfg.output_dir);
        const std::size_t workers = spectra::default_worker_count();
        json results;
        bool passed = true;
        switch (cfg.command) {
            case Command::steady: results = run_steady(cfg, dir, out); break;
            case Command::sweep: results = run_sweep(cfg, dir, out, workers); break;
            case Command::evolve: results = run_evolve(cfg, dir, out); break;
            case Command::validate: results = run_validate(cfg, dir, out, workers, passed); break;
            case Command::derive_coupling: results = run_derive_coupling(cfg, dir, out); break;
            case Command::dephasing_scan: results = run_dephasing_scan(cfg, dir, out); break;
        }
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        json meta;
        meta["tool"] = "nit-sim";
        meta["version"] = NITSIM_VERSION;
        meta["command"] = config::to_string(cfg.command);
        meta["config"] = config::render_config(cfg);
        meta["resolved"]["system_units"] = "kappa_a";
        meta["resolved"]["system"] = system_json(cfg.resolved_system());
        if (cfg.physical) {
            meta["resolved"]["physical"] = physical_json(*cfg.physical);
        }
        if (cfg.command == Command::sweep || cfg.command == Command::validate) {
            const config::SweepBlock w = cfg.sweep.value_or(config::SweepBlock{});
            meta["backend"] = cfg.command == Command::sweep ? std::string(spectra::to_string(w.backend)) : "all";
            meta["grid"] = {{"delta_min", w.delta_min},
                            {"delta_max", w.delta_max},
                            {"n_points", cfg.command == Command::sweep ? w.n_points : 11},
                            {"n_a", w.n_a},
                            {"n_b", w.n_b}};
        } else if (cfg.command == Command::evolve) {
            meta["backend"] = spectra::to_string(cfg.evolve->backend);
        } else {
            meta["backend"] = "analytic";
        }
        meta["assumptions"] = cfg.assumptions;
        meta["results"] = results;
        meta["outputs"] = dir.written();
        meta["wall_time_s"] = wall;
        dir.write("run.json", meta.dump(2) + "\n");
        return passed ? kSuccess : kNumericalError;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kIoError;
    } catch (const config::ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const DomainError& e) {
        err << "parameter error (" << e.field() << "): " << e.what() << "\n";
        return kConfigError;
    } catch (const DimensionError& e) {
        err << "dimension error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        err << "numerical error: " << e.what() << "\n";
        return kNumericalError;
    }
}

int run_file(const std::string& path, std::optional<Command> command, const std::optional<std::string>& out_dir,
             const std::optional<std::vector<std::string>>& formats, std::ostream& out, std::ostream& err) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        err << "I/O error: cannot read config '" << path << "'\n";
        return kIoError;
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    std::string text = buffer.str();
    config::RunConfig cfg;
    try {
        // A previous run.json replays its embedded canonical config.
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '{') {
            const auto meta = json::parse(text);
            text = meta.at("config").get<std::string>();
        }
        cfg = config::parse_config(text, command);
    } catch (const config::ConfigError& e) {
        err << "config error in " << path << ": " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        err << "config error in " << path << ": " << e.what() << "\n";
        return kConfigError;
    }
    if (out_dir) {
        cfg.output_dir = *out_dir;
    }
    if (formats) {
        for (const auto& f : *formats) {
            if (f != "csv" && f != "json" && f != "svg") {
                err << "config error: unknown format '" << f << "' (expected csv, json or svg)\n";
                return kConfigError;
            }
        }
        cfg.formats = *formats;
    }
    return run(cfg, out, err);
}

}  // namespace nitsim::run
