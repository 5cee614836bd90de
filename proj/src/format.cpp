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

#include "nitsim/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace nitsim {

namespace {

template <class... Args>
std::string render(double value, Args... args) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, args...);
    if (ec != std::errc{}) {
        return "nan";
    }
    return std::string(buf.data(), end);
}

}  // namespace

std::string format_double(double value, int digits) {
    return render(value, std::chars_format::general, digits);
}

std::string format_shortest(double value) { return render(value); }

std::string format_fixed(double value, int decimals) {
    // Avoid printing "-0.000".
    const double scale = std::pow(10.0, decimals);
    if (std::round(value * scale) == 0.0) {
        value = 0.0;
    }
    return render(value, std::chars_format::fixed, decimals);
}

}  // namespace nitsim
