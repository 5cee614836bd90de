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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nitsim/analytic.hpp"
#include "nitsim/errors.hpp"
#include "nitsim/spectra.hpp"
#include "oracles.hpp"

using namespace nitsim::spectra;
using nitsim::SystemParams;
using complex = std::complex<double>;

namespace {

SweepConfig symmetric_sweep(int points) {
    SweepConfig cfg;
    cfg.base = oracle::symmetric_windows();
    cfg.n_points = points;
    return cfg;
}

}  // namespace

TEST_CASE("grid is uniform and exactly mirror symmetric") {
    SweepConfig cfg = symmetric_sweep(1501);
    CHECK(cfg.detuning(0) == -1.5);
    CHECK(cfg.detuning(1500) == 1.5);
    CHECK(cfg.detuning(750) == 0.0);
    for (int i = 0; i < cfg.n_points; ++i) {
        REQUIRE(cfg.detuning(cfg.n_points - 1 - i) == -cfg.detuning(i));
    }
    cfg.n_points = 1;
    CHECK_THROWS_AS(cfg.validate(), nitsim::DomainError);
    cfg.n_points = 11;
    cfg.delta_min = 2.0;
    CHECK_THROWS_AS(cfg.validate(), nitsim::DomainError);
}

TEST_CASE("backend names round-trip") {
    for (const auto b : {Backend::analytic, Backend::meanfield, Backend::quantum}) {
        CHECK(backend_from_string(to_string(b)) == b);
    }
    CHECK_THROWS_AS(backend_from_string("exact"), nitsim::DomainError);
}

TEST_CASE("analytic sweep reproduces the closed form pointwise") {
    const SweepConfig cfg = symmetric_sweep(301);
    const Spectrum s = sweep(cfg);
    REQUIRE(s.size() == 301);
    for (std::size_t i = 0; i < s.size(); ++i) {
        SystemParams p = cfg.base;
        p.delta_p = s.detunings[i];
        const complex a = nitsim::analytic::steady_state(p).a;
        CHECK(s.a_re[i] == a.real());
        CHECK(s.a_im[i] == a.imag());
        CHECK(s.absorption[i] == -a.imag());
    }
}

TEST_CASE("sweeps are identical for any worker count") {
    SweepConfig cfg = symmetric_sweep(121);
    cfg.base = oracle::unequal_couplings();
    cfg.backend = Backend::meanfield;
    const Spectrum one = sweep(cfg, 1);
    const Spectrum three = sweep(cfg, 3);
    CHECK(one.a_re == three.a_re);
    CHECK(one.a_im == three.a_im);
    CHECK(to_csv(one) == to_csv(three));
}

TEST_CASE("worker count honours the environment") {
    ::setenv("NIT_SIM_THREADS", "3", 1);
    CHECK(default_worker_count() == 3);
    ::setenv("NIT_SIM_THREADS", "zero", 1);
    CHECK(default_worker_count() >= 1);
    ::unsetenv("NIT_SIM_THREADS");
    CHECK(default_worker_count() >= 1);
}

TEST_CASE("mean-field and analytic sweeps agree") {
    SweepConfig cfg = symmetric_sweep(61);
    const Spectrum exact = sweep(cfg);
    cfg.backend = Backend::meanfield;
    const Spectrum relaxed = sweep(cfg, 2);
    const CompareReport r = compare(exact, relaxed);
    CHECK(r.max_abs < 1e-8 * 0.03);
    CHECK(r.mean_abs <= r.max_abs);
    CHECK(r.max_relative < 1e-6);

    cfg.n_points = 62;
    CHECK_THROWS_AS(compare(exact, sweep(cfg)), nitsim::DomainError);
}

TEST_CASE("a failing point names its detuning") {
    SweepConfig cfg = symmetric_sweep(11);
    cfg.base.kappa_b = 0.0;
    cfg.backend = Backend::meanfield;
    try {
        sweep(cfg, 2);
        FAIL("expected DomainError");
    } catch (const nitsim::DomainError& e) {
        CHECK(std::string(e.what()).find("at delta_p = -1.5") != std::string::npos);
    }
}

TEST_CASE("a lone cavity gives a Lorentzian of width kappa_a") {
    SweepConfig cfg;
    cfg.base.epsilon = 0.03;
    cfg.base.lambda = 0.0;
    cfg.base.g = 0.0;
    cfg.base.kappa_b = 1e-3;
    cfg.base.gamma = 1e-3;
    cfg.delta_min = -3.0;
    cfg.delta_max = 3.0;
    cfg.n_points = 1201;
    const WindowReport r = analyze_windows(sweep(cfg));
    REQUIRE(r.peaks.size() == 1);
    CHECK(r.dips.empty());
    CHECK(std::abs(r.peaks[0].detuning) < 1e-12);
    CHECK(r.peaks[0].height == doctest::Approx(0.06).epsilon(1e-12));
    CHECK(r.peaks[0].fwhm == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(r.asymmetry < 1e-14);
    CHECK(r.notices.empty());
}

TEST_CASE("symmetric couplings open two transparency windows") {
    const SweepConfig cfg = symmetric_sweep(1501);
    const WindowReport r = analyze_windows(sweep(cfg));
    REQUIRE(r.peaks.size() == 3);
    REQUIRE(r.dips.size() == 2);
    std::vector<double> peaks;
    for (const auto& p : r.peaks) {
        peaks.push_back(p.detuning);
    }
    CHECK(peaks[0] == doctest::Approx(-peaks[2]).epsilon(1e-12));
    CHECK(std::abs(peaks[1]) < 1e-12);
    CHECK(r.dips[0].detuning == doctest::Approx(-r.dips[1].detuning).epsilon(1e-12));
    CHECK(r.asymmetry < 1e-12);

    // Dips sit where the numerator of <a>, eps (dbar_b dbar_q - g^2), is smallest.
    const SystemParams base = cfg.base;
    auto numerator = [&](double dp) {
        SystemParams p = base;
        p.delta_p = dp;
        const auto d = nitsim::analytic::effective_detunings(p);
        return d.dbar_b * d.dbar_q - p.g * p.g;
    };
    CHECK(std::abs(r.dips[0].detuning - oracle::argmin_abs(numerator, -1.0, -0.1)) < 2e-3);
    CHECK(std::abs(r.dips[1].detuning - oracle::argmin_abs(numerator, 0.1, 1.0)) < 2e-3);
    for (const auto& d : r.dips) {
        CHECK(d.relative_depth > 0.9);
        CHECK(d.relative_depth <= 1.0);
    }
}

TEST_CASE("peak positions converge under grid refinement") {
    SweepConfig coarse = symmetric_sweep(401);
    coarse.base = oracle::unequal_couplings();
    SweepConfig fine = coarse;
    fine.n_points = 1601;
    const WindowReport a = analyze_windows(sweep(coarse));
    const WindowReport b = analyze_windows(sweep(fine));
    const double coarse_step = 3.0 / 400.0;
    REQUIRE(a.peaks.size() == b.peaks.size());
    REQUIRE(a.dips.size() == b.dips.size());
    for (std::size_t k = 0; k < a.peaks.size(); ++k) {
        CHECK(std::abs(a.peaks[k].detuning - b.peaks[k].detuning) < coarse_step);
    }
    for (std::size_t k = 0; k < a.dips.size(); ++k) {
        CHECK(std::abs(a.dips[k].detuning - b.dips[k].detuning) < coarse_step);
    }
}

TEST_CASE("a qubit offset breaks the mirror symmetry") {
    SweepConfig cfg = symmetric_sweep(601);
    cfg.base.delta_q_offset = 0.3;
    CHECK(analyze_windows(sweep(cfg)).asymmetry > 0.05);
}

TEST_CASE("window analysis needs a fine enough grid") {
    CHECK_THROWS_AS(analyze_windows(sweep(symmetric_sweep(50))), nitsim::DomainError);
    SweepConfig cfg = symmetric_sweep(101);
    cfg.base.epsilon = 0.0;
    const WindowReport r = analyze_windows(sweep(cfg));
    CHECK(r.peaks.empty());
    CHECK_FALSE(r.notices.empty());
}

TEST_CASE("dephasing washes out the central transparency") {
    const SystemParams base = oracle::symmetric_windows();
    std::vector<double> rates;
    for (double r = 1e-4; r < 2.0; r *= 1.5) {
        rates.push_back(r);
    }
    const auto values = dephasing_scan(base, rates);
    REQUIRE(values.size() == rates.size());
    for (std::size_t k = 0; k < rates.size(); ++k) {
        SystemParams p = base;
        p.gamma_phi = rates[k];
        p.delta_p = 0.0;
        CHECK(values[k] == -nitsim::analytic::steady_state(p).a.imag());
        if (k > 0) {
            CHECK(values[k] < values[k - 1]);
        }
    }
    // Strong dephasing: eps (kappa_b/2) / (lambda^2 + kappa_b/4).
    const double limit = 0.03 * 0.5e-3 / (0.25 + 0.25e-3);
    CHECK(dephasing_scan(base, {1e8})[0] == doctest::Approx(limit).epsilon(1e-6));

    SystemParams unequal = oracle::unequal_couplings();
    CHECK_THROWS_AS(dephasing_scan(unequal, {0.1}), nitsim::DomainError);
}

TEST_CASE("CSV and JSON outputs") {
    const Spectrum s = sweep(symmetric_sweep(101));
    const std::string csv = to_csv(s);
    CHECK(csv.starts_with("delta_p,re_a,im_a,absorption\n"));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 102);

    // Values survive a text round trip exactly.
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::getline(in, line);
        std::istringstream row(line);
        std::string field;
        std::getline(row, field, ',');
        CHECK(std::stod(field) == s.detunings[i]);
        std::getline(row, field, ',');
        CHECK(std::stod(field) == s.a_re[i]);
    }

    const auto j = nlohmann::json::parse(to_json(analyze_windows(s)));
    CHECK(j.at("peaks").size() == 3);
    CHECK(j.at("dips").size() == 2);
    CHECK(j.contains("asymmetry"));
}

TEST_CASE("comparison of a spectrum with itself") {
    const Spectrum s = sweep(symmetric_sweep(51));
    const CompareReport r = compare(s, s);
    CHECK(r.max_abs == 0.0);
    CHECK(r.mean_abs == 0.0);
    CHECK(r.max_relative == 0.0);
}

TEST_CASE("Lindblad sweep at weak drive stays within the closure error") {
    SweepConfig cfg = symmetric_sweep(5);
    cfg.base.epsilon = 0.01;
    cfg.delta_min = -1.2;
    cfg.delta_max = 1.2;
    const Spectrum exact = sweep(cfg);
    cfg.backend = Backend::quantum;
    cfg.quantum_spec = nitsim::quantum::HilbertSpec{5, 5};
    CHECK(compare(exact, sweep(cfg, 2)).max_relative < 0.02);
}

TEST_CASE("dips fill in as the ion-side linewidths grow") {
    double previous = 2.0;
    for (double rate : {1e-3, 1e-2, 5e-2, 0.1, 0.25, 0.5}) {
        SweepConfig cfg = symmetric_sweep(1501);
        cfg.base.kappa_b = cfg.base.gamma = cfg.base.gamma_phi = rate;
        const WindowReport r = analyze_windows(sweep(cfg));
        double depth = 0.0;
        for (const auto& d : r.dips) {
            depth = std::max(depth, d.relative_depth);
        }
        CAPTURE(rate);
        CHECK(depth < previous);
        previous = depth;
    }
}
