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

#include "nitsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "nitsim/errors.hpp"
#include "nitsim/format.hpp"

namespace nitsim::svg {

namespace {

constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 36.0;
constexpr double kBottom = 52.0;

std::string escape(const std::string& text) {
    std::string out;
    for (const char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

/// Round step (1, 2 or 5 times a power of ten) giving roughly `target` intervals over `span`.
double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (const double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) {
            return m * mag;
        }
    }
    return 10.0 * mag;
}

int decimals_for(double step) { return std::max(0, static_cast<int>(-std::floor(std::log10(step) + 1e-9))); }

}  // namespace

std::string emit_svg(const spectra::Spectrum& s, const Style& style) {
    if (s.size() == 0) {
        throw DomainError("spectrum", "cannot plot an empty spectrum");
    }
    const double w = style.width;
    const double h = style.height;
    const double plot_w = w - kLeft - kRight;
    const double plot_h = h - kTop - kBottom;

    double x_lo = s.detunings.front();
    double x_hi = s.detunings.back();
    if (x_hi <= x_lo) {
        x_hi = x_lo + 1.0;
    }
    double y_lo = 0.0;
    double y_hi = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        y_lo = std::min({y_lo, s.a_re[i], s.absorption[i]});
        y_hi = std::max({y_hi, s.a_re[i], s.absorption[i]});
    }
    if (y_hi - y_lo <= 0.0) {
        y_hi = y_lo + 1.0;
    }
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;

    auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };
    auto points = [&](const std::vector<double>& ys) {
        std::string out;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i > 0) {
                out += ' ';
            }
            out += format_fixed(px(s.detunings[i]), 3);
            out += ',';
            out += format_fixed(py(ys[i]), 3);
        }
        return out;
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width << "\" height=\"" << style.height
        << "\" viewBox=\"0 0 " << style.width << ' ' << style.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << style.width << "\" height=\"" << style.height << "\" fill=\"white\"/>\n";
    if (!style.title.empty()) {
        svg << "<text x=\"" << format_fixed(w / 2, 1) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
            << escape(style.title) << "</text>\n";
    }

    // Frame, zero line and ticks.
    svg << "<g id=\"axes\" stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
    svg << "<rect x=\"" << format_fixed(kLeft, 3) << "\" y=\"" << format_fixed(kTop, 3) << "\" width=\""
        << format_fixed(plot_w, 3) << "\" height=\"" << format_fixed(plot_h, 3) << "\"/>\n";
    if (y_lo < 0.0 && y_hi > 0.0) {
        svg << "<line x1=\"" << format_fixed(kLeft, 3) << "\" y1=\"" << format_fixed(py(0.0), 3) << "\" x2=\""
            << format_fixed(kLeft + plot_w, 3) << "\" y2=\"" << format_fixed(py(0.0), 3)
            << "\" stroke=\"#999999\" stroke-dasharray=\"2,3\"/>\n";
    }
    svg << "</g>\n<g id=\"ticks\" fill=\"black\">\n";
    const double xs = nice_step(x_hi - x_lo, 6);
    const int xd = decimals_for(xs);
    for (double t = std::ceil(x_lo / xs) * xs; t <= x_hi + 1e-9 * xs; t += xs) {
        const std::string x = format_fixed(px(t), 3);
        svg << "<line x1=\"" << x << "\" y1=\"" << format_fixed(kTop + plot_h, 3) << "\" x2=\"" << x << "\" y2=\""
            << format_fixed(kTop + plot_h + 5, 3) << "\" stroke=\"black\"/>";
        svg << "<text x=\"" << x << "\" y=\"" << format_fixed(kTop + plot_h + 18, 3) << "\" text-anchor=\"middle\">"
            << format_fixed(t, xd) << "</text>\n";
    }
    const double ys = nice_step(y_hi - y_lo, 5);
    const int yd = decimals_for(ys);
    for (double t = std::ceil(y_lo / ys) * ys; t <= y_hi + 1e-9 * ys; t += ys) {
        const std::string y = format_fixed(py(t), 3);
        svg << "<line x1=\"" << format_fixed(kLeft - 5, 3) << "\" y1=\"" << y << "\" x2=\"" << format_fixed(kLeft, 3)
            << "\" y2=\"" << y << "\" stroke=\"black\"/>";
        svg << "<text x=\"" << format_fixed(kLeft - 8, 3) << "\" y=\"" << format_fixed(py(t) + 4, 3)
            << "\" text-anchor=\"end\">" << format_fixed(t, yd) << "</text>\n";
    }
    svg << "</g>\n";
    svg << "<text x=\"" << format_fixed(kLeft + plot_w / 2, 3) << "\" y=\"" << format_fixed(h - 12, 3)
        << "\" text-anchor=\"middle\">Δp/κa</text>\n";
    svg << "<text x=\"16\" y=\"" << format_fixed(kTop + plot_h / 2, 3)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << format_fixed(kTop + plot_h / 2, 3)
        << ")\">amplitude ⟨a⟩</text>\n";

    svg << "<polyline id=\"dispersion\" fill=\"none\" stroke=\"" << escape(style.dispersion_color)
        << "\" stroke-width=\"1.5\" points=\"" << points(s.a_re) << "\"/>\n";
    svg << "<polyline id=\"absorption\" fill=\"none\" stroke=\"" << escape(style.absorption_color)
        << "\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\" points=\"" << points(s.absorption) << "\"/>\n";

    // Legend.
    const double lx = kLeft + 12;
    const double ly = kTop + 16;
    svg << "<g id=\"legend\">\n";
    svg << "<line x1=\"" << format_fixed(lx, 3) << "\" y1=\"" << format_fixed(ly, 3) << "\" x2=\""
        << format_fixed(lx + 28, 3) << "\" y2=\"" << format_fixed(ly, 3) << "\" stroke=\""
        << escape(style.absorption_color) << "\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>";
    svg << "<text x=\"" << format_fixed(lx + 34, 3) << "\" y=\"" << format_fixed(ly + 4, 3)
        << "\">absorption −Im⟨a⟩</text>\n";
    svg << "<line x1=\"" << format_fixed(lx, 3) << "\" y1=\"" << format_fixed(ly + 18, 3) << "\" x2=\""
        << format_fixed(lx + 28, 3) << "\" y2=\"" << format_fixed(ly + 18, 3) << "\" stroke=\""
        << escape(style.dispersion_color) << "\" stroke-width=\"1.5\"/>";
    svg << "<text x=\"" << format_fixed(lx + 34, 3) << "\" y=\"" << format_fixed(ly + 22, 3)
        << "\">dispersion Re⟨a⟩</text>\n";
    svg << "</g>\n</svg>\n";
    return svg.str();
}

}  // namespace nitsim::svg
