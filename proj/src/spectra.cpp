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

#include "nitsim/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "nitsim/analytic.hpp"
#include "nitsim/errors.hpp"
#include "nitsim/format.hpp"
#include "nitsim/meanfield.hpp"

namespace nitsim::spectra {

std::string_view to_string(Backend backend) {
    switch (backend) {
        case Backend::analytic: return "analytic";
        case Backend::meanfield: return "meanfield";
        case Backend::quantum: return "quantum";
    }
    return "unknown";
}

Backend backend_from_string(std::string_view name) {
    if (name == "analytic") return Backend::analytic;
    if (name == "meanfield") return Backend::meanfield;
    if (name == "quantum") return Backend::quantum;
    throw DomainError("backend", "unknown backend '" + std::string(name) +
                                     "' (expected analytic, meanfield or quantum)");
}

void SweepConfig::validate() const {
    base.validate();
    if (!(std::isfinite(delta_min) && std::isfinite(delta_max) && delta_min < delta_max)) {
        throw DomainError("delta_min", "delta_min must be finite and < delta_max");
    }
    if (n_points < 2) {
        throw DomainError("n_points", "n_points must be >= 2");
    }
    if (quantum_spec) {
        quantum_spec->validate();
    }
    if (!(meanfield_tol > 0.0)) {
        throw DomainError("meanfield_tol", "meanfield_tol must be > 0");
    }
}

double SweepConfig::detuning(int i) const noexcept {
    const double mid = 0.5 * (delta_min + delta_max);
    const double half = 0.5 * (delta_max - delta_min);
    const int steps = n_points - 1;
    return mid + half * static_cast<double>(2 * i - steps) / static_cast<double>(steps);
}

complex steady_amplitude(const SystemParams& sys, Backend backend, const quantum::HilbertSpec& spec,
                         double meanfield_tol) {
    switch (backend) {
        case Backend::analytic:
            return analytic::steady_state(sys).a;
        case Backend::meanfield:
            return meanfield::relax_to_steady_state(sys, meanfield_tol).a;
        case Backend::quantum: {
            const auto l = quantum::build_liouvillian(sys, spec);
            const auto ss = quantum::steady_state_dm(l);
            return quantum::expectation(quantum::cached_operators(spec)->a, ss.rho);
        }
    }
    throw DomainError("backend", "unknown backend");
}

std::size_t default_worker_count() {
    if (const char* env = std::getenv("NIT_SIM_THREADS")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value > 0) {
            return static_cast<std::size_t>(value);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

[[noreturn]] void rethrow_with_detuning(const std::exception_ptr& error, double delta_p) {
    std::ostringstream where;
    where << "at delta_p = " << format_double(delta_p) << ": ";
    try {
        std::rethrow_exception(error);
    } catch (const DomainError& e) {
        throw DomainError(e.field(), where.str() + e.what());
    } catch (const DimensionError& e) {
        throw DimensionError(where.str() + e.what());
    } catch (const SingularityError& e) {
        throw SingularityError(delta_p, where.str() + e.what());
    } catch (const std::exception& e) {
        throw NumericalError(where.str() + e.what());
    }
}

}  // namespace

Spectrum sweep(const SweepConfig& cfg, std::size_t workers) {
    cfg.validate();
    const quantum::HilbertSpec spec = cfg.quantum_spec.value_or(quantum::HilbertSpec{});
    if (cfg.backend == Backend::quantum) {
        (void)quantum::cached_operators(spec);
    }
    const auto n = static_cast<std::size_t>(cfg.n_points);
    std::vector<complex> values(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};

    auto work = [&]() {
        for (;;) {
            if (failed.load()) {
                return;
            }
            const std::size_t i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            SystemParams sys = cfg.base;
            sys.delta_p = cfg.detuning(static_cast<int>(i));
            try {
                values[i] = steady_amplitude(sys, cfg.backend, spec, cfg.meanfield_tol);
            } catch (...) {
                errors[i] = std::current_exception();
                failed.store(true);
            }
        }
    };

    const std::size_t count = std::clamp<std::size_t>(workers, 1, n);
    if (count == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(count);
        for (std::size_t w = 0; w < count; ++w) {
            pool.emplace_back(work);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (errors[i]) {
            rethrow_with_detuning(errors[i], cfg.detuning(static_cast<int>(i)));
        }
    }

    Spectrum s;
    s.backend = cfg.backend;
    s.params = cfg.base;
    s.detunings.resize(n);
    s.a_re.resize(n);
    s.a_im.resize(n);
    s.absorption.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.detunings[i] = cfg.detuning(static_cast<int>(i));
        s.a_re[i] = values[i].real();
        s.a_im[i] = values[i].imag();
        s.absorption[i] = -values[i].imag();
    }
    return s;
}

WindowReport analyze_windows(const Spectrum& s) {
    const std::size_t n = s.size();
    if (n < 51) {
        throw DomainError("n_points", "window analysis needs at least 51 grid points");
    }
    const auto& x = s.detunings;
    const auto& y = s.absorption;
    const double step = (x.back() - x.front()) / static_cast<double>(n - 1);
    const double y_max = *std::max_element(y.begin(), y.end());
    const double y_min = *std::min_element(y.begin(), y.end());
    const double flat = 1e-12 * std::max(std::abs(y_max), std::abs(y_min));

    // Sign of each forward difference; flat stretches inherit the previous sign.
    std::vector<int> sign(n - 1, 0);
    int last = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = y[i + 1] - y[i];
        if (std::abs(d) > flat) {
            last = d > 0 ? 1 : -1;
        }
        sign[i] = last;
    }

    auto refine = [&](std::size_t i) {
        const double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
        const double curvature = y0 - 2.0 * y1 + y2;
        if (curvature == 0.0) {
            return std::pair{x[i], y1};
        }
        const double offset = std::clamp(0.5 * (y0 - y2) / curvature, -0.5, 0.5);
        return std::pair{x[i] + offset * step, y1 - 0.25 * (y0 - y2) * offset};
    };

    auto half_width = [&](std::size_t i, double height) {
        const double half = 0.5 * height;
        double left = std::numeric_limits<double>::quiet_NaN();
        double right = left;
        for (std::size_t j = i; j-- > 0;) {
            if (y[j] < half) {
                left = x[j] + (half - y[j]) / (y[j + 1] - y[j]) * step;
                break;
            }
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (y[j] < half) {
                right = x[j - 1] + (y[j - 1] - half) / (y[j - 1] - y[j]) * step;
                break;
            }
        }
        return right - left;
    };

    WindowReport report;
    struct Extremum {
        bool peak;
        std::size_t index;
    };
    std::vector<Extremum> order;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (sign[i - 1] > 0 && sign[i] < 0) {
            const auto [xp, yp] = refine(i);
            report.peaks.push_back({xp, yp, half_width(i, yp)});
            order.push_back({true, report.peaks.size() - 1});
        } else if (sign[i - 1] < 0 && sign[i] > 0) {
            const auto [xd, yd] = refine(i);
            report.dips.push_back({xd, yd, std::numeric_limits<double>::quiet_NaN()});
            order.push_back({false, report.dips.size() - 1});
        }
    }
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (order[k].peak) {
            continue;
        }
        double neighbour = std::numeric_limits<double>::infinity();
        if (k > 0 && order[k - 1].peak) {
            neighbour = std::min(neighbour, report.peaks[order[k - 1].index].height);
        }
        if (k + 1 < order.size() && order[k + 1].peak) {
            neighbour = std::min(neighbour, report.peaks[order[k + 1].index].height);
        }
        if (std::isfinite(neighbour) && neighbour > 0.0) {
            Dip& dip = report.dips[order[k].index];
            dip.relative_depth = 1.0 - dip.value / neighbour;
        }
    }
    if (report.peaks.empty()) {
        report.notices.emplace_back("degenerate spectrum: no absorption peak found");
    }

    std::size_t pairs = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double mirror = std::round((-x[i] - x.front()) / step);
        if (mirror < 0.0 || mirror >= static_cast<double>(n)) {
            continue;
        }
        const auto j = static_cast<std::size_t>(mirror);
        if (std::abs(x[j] + x[i]) > 1e-9 * step) {
            continue;
        }
        ++pairs;
        worst = std::max(worst, std::abs(y[i] - y[j]));
    }
    if (pairs == 0) {
        report.notices.emplace_back("grid has no mirror-symmetric points; asymmetry not measured");
    } else if (y_max > 0.0) {
        report.asymmetry = worst / y_max;
    } else {
        report.notices.emplace_back("absorption is nowhere positive; asymmetry not normalized");
    }
    return report;
}

CompareReport compare(const Spectrum& s1, const Spectrum& s2) {
    if (s1.detunings != s2.detunings) {
        throw DomainError("detunings", "spectra are sampled on different grids");
    }
    CompareReport r;
    const std::size_t n = s1.size();
    for (std::size_t i = 0; i < n; ++i) {
        const complex a1(s1.a_re[i], s1.a_im[i]);
        const complex a2(s2.a_re[i], s2.a_im[i]);
        const double diff = std::abs(a1 - a2);
        r.max_abs = std::max(r.max_abs, diff);
        r.mean_abs += diff;
        if (diff > 0.0) {
            r.max_relative = std::max(r.max_relative, diff / std::abs(a1));
        }
    }
    if (n > 0) {
        r.mean_abs /= static_cast<double>(n);
    }
    return r;
}

std::vector<double> dephasing_scan(const SystemParams& base, const std::vector<double>& gamma_phi_values) {
    if (std::abs(base.lambda - base.g) > 1e-12 * std::max(1.0, base.lambda)) {
        throw DomainError("g", "dephasing scan requires lambda == g");
    }
    std::vector<double> heights;
    heights.reserve(gamma_phi_values.size());
    for (const double value : gamma_phi_values) {
        SystemParams sys = base;
        sys.delta_p = 0.0;
        sys.gamma_phi = value;
        sys.validate();
        heights.push_back(analytic::absorption(analytic::steady_state(sys)));
    }
    return heights;
}

void write_csv(const Spectrum& s, std::ostream& out) {
    out << "delta_p,re_a,im_a,absorption\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out << format_double(s.detunings[i]) << ',' << format_double(s.a_re[i]) << ','
            << format_double(s.a_im[i]) << ',' << format_double(s.absorption[i]) << '\n';
    }
}

std::string to_csv(const Spectrum& s) {
    std::ostringstream out;
    write_csv(s, out);
    return out.str();
}

std::string to_json(const WindowReport& report) {
    nlohmann::ordered_json j;
    j["peaks"] = nlohmann::ordered_json::array();
    for (const auto& p : report.peaks) {
        j["peaks"].push_back({{"detuning", p.detuning}, {"height", p.height}, {"fwhm", p.fwhm}});
    }
    j["dips"] = nlohmann::ordered_json::array();
    for (const auto& d : report.dips) {
        j["dips"].push_back({{"detuning", d.detuning}, {"value", d.value}, {"relative_depth", d.relative_depth}});
    }
    j["asymmetry"] = report.asymmetry;
    j["notices"] = report.notices;
    return j.dump(2);
}

}  // namespace nitsim::spectra
