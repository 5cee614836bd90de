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

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "nitsim/analytic.hpp"
#include "nitsim/config.hpp"
#include "nitsim/errors.hpp"
#include "nitsim/meanfield.hpp"
#include "nitsim/model.hpp"
#include "nitsim/quantum.hpp"
#include "nitsim/spectra.hpp"
#include "nitsim/svg.hpp"

namespace py = pybind11;
using namespace nitsim;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::dict spectrum_dict(const spectra::Spectrum& s) {
    py::dict d;
    d["delta_p"] = to_array(s.detunings);
    d["re_a"] = to_array(s.a_re);
    d["im_a"] = to_array(s.a_im);
    d["absorption"] = to_array(s.absorption);
    d["backend"] = std::string(spectra::to_string(s.backend));
    return d;
}

spectra::Spectrum spectrum_from(const SystemParams& base, py::array_t<double> detunings, spectra::Backend backend) {
    spectra::Spectrum s;
    s.params = base;
    s.backend = backend;
    const auto x = detunings.unchecked<1>();
    for (py::ssize_t i = 0; i < x.shape(0); ++i) {
        SystemParams p = base;
        p.delta_p = x(i);
        const complex a = analytic::steady_state(p).a;
        s.detunings.push_back(x(i));
        s.a_re.push_back(a.real());
        s.a_im.push_back(a.imag());
        s.absorption.push_back(-a.imag());
    }
    return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Steady-state and transient response of a driven NEM / trapped-ion / qubit system";
    m.attr("__version__") = NITSIM_VERSION;

    auto base_error = py::register_exception<Error>(m, "NitSimError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", base_error.ptr());
    py::register_exception<SingularityError>(m, "SingularityError", numerical.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", numerical.ptr());
    py::register_exception<config::ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def(py::init([](double delta_p, double lambda, double g, complex epsilon, double kappa_a, double kappa_b,
                         double gamma, double gamma_phi, double delta_b_offset, double delta_q_offset) {
                 SystemParams s;
                 s.delta_p = delta_p;
                 s.lambda = lambda;
                 s.g = g;
                 s.epsilon = epsilon;
                 s.kappa_a = kappa_a;
                 s.kappa_b = kappa_b;
                 s.gamma = gamma;
                 s.gamma_phi = gamma_phi;
                 s.delta_b_offset = delta_b_offset;
                 s.delta_q_offset = delta_q_offset;
                 s.validate();
                 return s;
             }),
             py::arg("delta_p") = 0.0, py::arg("lambda_") = 0.0, py::arg("g") = 0.0,
             py::arg("epsilon") = complex{}, py::arg("kappa_a") = 1.0, py::arg("kappa_b") = 0.0,
             py::arg("gamma") = 0.0, py::arg("gamma_phi") = 0.0, py::arg("delta_b_offset") = 0.0,
             py::arg("delta_q_offset") = 0.0)
        .def_readwrite("delta_p", &SystemParams::delta_p)
        .def_readwrite("delta_b_offset", &SystemParams::delta_b_offset)
        .def_readwrite("delta_q_offset", &SystemParams::delta_q_offset)
        .def_readwrite("lambda_", &SystemParams::lambda)
        .def_readwrite("g", &SystemParams::g)
        .def_readwrite("epsilon", &SystemParams::epsilon)
        .def_readwrite("kappa_a", &SystemParams::kappa_a)
        .def_readwrite("kappa_b", &SystemParams::kappa_b)
        .def_readwrite("gamma", &SystemParams::gamma)
        .def_readwrite("gamma_phi", &SystemParams::gamma_phi)
        .def_property_readonly("kappa_q", &SystemParams::kappa_q)
        .def("validate", &SystemParams::validate)
        .def("normalized", [](const SystemParams& s) { return normalize(s); })
        .def(py::self == py::self)
        .def("__repr__", [](const SystemParams& s) {
            std::ostringstream out;
            out << "SystemParams(delta_p=" << s.delta_p << ", lambda_=" << s.lambda << ", g=" << s.g
                << ", epsilon=" << s.epsilon.real() << (s.epsilon.imag() < 0 ? "-" : "+") << std::abs(s.epsilon.imag())
                << "j, kappa_a=" << s.kappa_a << ", kappa_b=" << s.kappa_b << ", gamma=" << s.gamma
                << ", gamma_phi=" << s.gamma_phi << ")";
            return out.str();
        });

    py::class_<PhysicalParams>(m, "PhysicalParams")
        .def(py::init<>())
        .def_readwrite("d", &PhysicalParams::d)
        .def_readwrite("V0", &PhysicalParams::V0)
        .def_readwrite("C0", &PhysicalParams::C0)
        .def_readwrite("M", &PhysicalParams::M)
        .def_readwrite("m", &PhysicalParams::m)
        .def_readwrite("omega", &PhysicalParams::omega)
        .def_readwrite("nu", &PhysicalParams::nu)
        .def_readwrite("k_l", &PhysicalParams::k_l)
        .def_readwrite("Omega", &PhysicalParams::Omega);

    m.def("derive_lambda", &derive_lambda, py::arg("physical"));
    m.def("lamb_dicke", &lamb_dicke, py::arg("physical"));
    m.def("derive_g", &derive_g, py::arg("physical"));

    m.def(
        "steady_state",
        [](const SystemParams& s) {
            const auto ss = analytic::steady_state(s);
            return py::make_tuple(ss.a, ss.b, ss.sigma_minus);
        },
        py::arg("params"), "Closed-form (<a>, <b>, <sigma_->).");

    m.def(
        "relax",
        [](const SystemParams& s, double tol) {
            meanfield::MeanFieldState r;
            {
                py::gil_scoped_release release;
                r = meanfield::relax_to_steady_state(s, tol);
            }
            return py::make_tuple(r.a, r.b, r.sigma_minus);
        },
        py::arg("params"), py::arg("tol") = 1e-10, "Mean-field amplitudes after relaxing from rest.");

    m.def(
        "lindblad_amplitude",
        [](const SystemParams& s, int n_a, int n_b) {
            py::gil_scoped_release release;
            return spectra::steady_amplitude(s, spectra::Backend::quantum, {n_a, n_b});
        },
        py::arg("params"), py::arg("n_a") = 5, py::arg("n_b") = 5, "<a> in the truncated Lindblad steady state.");

    m.def(
        "sweep",
        [](const SystemParams& base, double delta_min, double delta_max, int n_points, const std::string& backend,
           int n_a, int n_b, std::size_t workers) {
            spectra::SweepConfig cfg;
            cfg.base = base;
            cfg.delta_min = delta_min;
            cfg.delta_max = delta_max;
            cfg.n_points = n_points;
            cfg.backend = spectra::backend_from_string(backend);
            cfg.quantum_spec = quantum::HilbertSpec{n_a, n_b};
            spectra::Spectrum s;
            {
                py::gil_scoped_release release;
                s = spectra::sweep(cfg, workers == 0 ? spectra::default_worker_count() : workers);
            }
            return spectrum_dict(s);
        },
        py::arg("params"), py::arg("delta_min") = -1.5, py::arg("delta_max") = 1.5, py::arg("n_points") = 201,
        py::arg("backend") = "analytic", py::arg("n_a") = 5, py::arg("n_b") = 5, py::arg("workers") = 0);

    m.def(
        "analyze_windows",
        [](const SystemParams& base, py::array_t<double> detunings) {
            const auto report = spectra::analyze_windows(spectrum_from(base, detunings, spectra::Backend::analytic));
            py::list peaks, dips;
            for (const auto& p : report.peaks) {
                peaks.append(py::dict(py::arg("detuning") = p.detuning, py::arg("height") = p.height,
                                      py::arg("fwhm") = p.fwhm));
            }
            for (const auto& d : report.dips) {
                dips.append(py::dict(py::arg("detuning") = d.detuning, py::arg("value") = d.value,
                                     py::arg("relative_depth") = d.relative_depth));
            }
            return py::dict(py::arg("peaks") = peaks, py::arg("dips") = dips, py::arg("asymmetry") = report.asymmetry,
                            py::arg("notices") = report.notices);
        },
        py::arg("params"), py::arg("detunings"), "Peaks, dips and mirror asymmetry of the analytic absorption.");

    m.def(
        "dephasing_scan",
        [](const SystemParams& base, const std::vector<double>& values) {
            return to_array(spectra::dephasing_scan(base, values));
        },
        py::arg("params"), py::arg("gamma_phi_values"));

    m.def(
        "spectrum_svg",
        [](const SystemParams& base, py::array_t<double> detunings, const std::string& title) {
            svg::Style style;
            style.title = title;
            return svg::emit_svg(spectrum_from(base, detunings, spectra::Backend::analytic), style);
        },
        py::arg("params"), py::arg("detunings"), py::arg("title") = "");

    m.def(
        "render_config", [](const std::string& text) { return config::render_config(config::parse_config(text)); },
        py::arg("text"), "Parses a run configuration and returns its canonical form.");
}
