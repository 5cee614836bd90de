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

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nitsim/model.hpp"
#include "nitsim/quantum.hpp"

namespace nitsim::spectra {

enum class Backend { analytic, meanfield, quantum };

std::string_view to_string(Backend backend);
/// Throws DomainError for unknown names.
Backend backend_from_string(std::string_view name);

/// A uniform probe-detuning sweep.
struct SweepConfig {
    SystemParams base;  ///< normalized; delta_p is overwritten per grid point
    double delta_min = -1.5;
    double delta_max = 1.5;
    int n_points = 201;
    Backend backend = Backend::analytic;
    std::optional<quantum::HilbertSpec> quantum_spec;  ///< defaults to n_a = n_b = 5
    double meanfield_tol = 1e-10;                      ///< residual tolerance for relaxation

    void validate() const;
    /// Grid point i; exactly antisymmetric about the centre (grid[n-1-i] == -grid[i] when centred on 0).
    double detuning(int i) const noexcept;
};

struct Spectrum {
    std::vector<double> detunings;
    std::vector<double> a_re;
    std::vector<double> a_im;
    std::vector<double> absorption;  ///< -Im<a>
    Backend backend = Backend::analytic;
    SystemParams params;

    std::size_t size() const noexcept { return detunings.size(); }
};

/// Steady-state <a> at one parameter point with the chosen backend.
complex steady_amplitude(const SystemParams& sys, Backend backend,
                         const quantum::HilbertSpec& spec = {}, double meanfield_tol = 1e-10);

/// Number of workers from NIT_SIM_THREADS (positive integer), else the hardware concurrency.
std::size_t default_worker_count();

/// Evaluates every grid point independently on `workers` threads. Output is ordered by grid
/// index and bit-identical for any worker count. The first failing point (lowest index)
/// aborts the sweep with an error naming its detuning.
Spectrum sweep(const SweepConfig& cfg, std::size_t workers = 1);

struct Peak {
    double detuning = 0.0;
    double height = 0.0;
    double fwhm = 0.0;  ///< NaN when a half-height crossing lies outside the grid
};

struct Dip {
    double detuning = 0.0;
    double value = 0.0;           ///< absorption at the dip
    double relative_depth = 0.0;  ///< 1 - value / min(neighbouring peak heights)
};

struct WindowReport {
    std::vector<Peak> peaks;
    std::vector<Dip> dips;
    double asymmetry = 0.0;
    std::vector<std::string> notices;
};

/// Local extrema of the absorption curve (first-difference sign changes refined by
/// three-point parabolic interpolation), peak widths from linearly interpolated
/// half-height crossings, and the normalized mirror asymmetry
/// max |A(D) - A(-D)| / max A over the symmetric part of the grid.
WindowReport analyze_windows(const Spectrum& s);

struct CompareReport {
    double max_abs = 0.0;
    double mean_abs = 0.0;
    double max_relative = 0.0;  ///< max |<a>_1 - <a>_2| / |<a>_1|
};

/// Pointwise comparison of <a>. Throws DomainError when the grids differ.
CompareReport compare(const Spectrum& s1, const Spectrum& s2);

/// Absorption at zero probe detuning for each dephasing rate. Requires lambda == g.
std::vector<double> dephasing_scan(const SystemParams& base, const std::vector<double>& gamma_phi_values);

/// `delta_p,re_a,im_a,absorption` with 17 significant digits.
void write_csv(const Spectrum& s, std::ostream& out);
std::string to_csv(const Spectrum& s);

/// JSON text mirroring WindowReport.
std::string to_json(const WindowReport& report);

}  // namespace nitsim::spectra
