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

#include <string>

#include "nitsim/spectra.hpp"

namespace nitsim::svg {

struct Style {
    int width = 720;
    int height = 440;
    std::string title;
    std::string dispersion_color = "#1f4fbf";
    std::string absorption_color = "#d62728";
};

/// Self-contained SVG of a spectrum: dispersion Re<a> as a solid polyline and
/// absorption -Im<a> as a dashed polyline against Delta_p/kappa_a. Output depends
/// only on the inputs. Throws DomainError for an empty spectrum.
std::string emit_svg(const spectra::Spectrum& s, const Style& style = {});

}  // namespace nitsim::svg
