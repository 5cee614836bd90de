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

// Independent reference computations used only by the tests.
#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "nitsim/model.hpp"

namespace oracle {

using complex = std::complex<double>;

/// The mean-field generator assembled entry by entry from the equations of motion.
inline Eigen::Matrix3cd mean_field_matrix(const nitsim::SystemParams& s) {
    const complex i(0.0, 1.0);
    const complex da = s.delta_p - 0.5 * i * s.kappa_a;
    const complex db = s.delta_p + s.delta_b_offset - 0.5 * i * s.kappa_b;
    const complex dq = s.delta_p + s.delta_q_offset - 0.5 * i * (2.0 * s.gamma_phi + s.gamma);
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    m(0, 0) = -i * da;
    m(0, 1) = i * s.lambda;
    m(1, 0) = i * s.lambda;
    m(1, 1) = -i * db;
    m(1, 2) = -i * s.g;
    m(2, 1) = -i * s.g;
    m(2, 2) = -i * dq;
    return m;
}

/// Fixed point of d/dt x = M x + f, with f = (-i eps, 0, 0), by a generic LU solve.
inline Eigen::Vector3cd linear_steady_state(const nitsim::SystemParams& s) {
    Eigen::Vector3cd f(complex(0.0, -1.0) * s.epsilon, 0.0, 0.0);
    return mean_field_matrix(s).fullPivLu().solve(-f);
}

/// Real minimizer of |h| on [lo, hi]: coarse scan then golden-section refinement.
inline double argmin_abs(const std::function<complex(double)>& h, double lo, double hi, int scan = 2000) {
    double best = lo;
    double best_val = std::abs(h(lo));
    const double dx = (hi - lo) / scan;
    for (int k = 1; k <= scan; ++k) {
        const double x = lo + k * dx;
        const double v = std::abs(h(x));
        if (v < best_val) {
            best_val = v;
            best = x;
        }
    }
    double a = std::max(lo, best - dx);
    double b = std::min(hi, best + dx);
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int k = 0; k < 200; ++k) {
        const double c = b - r * (b - a);
        const double d = a + r * (b - a);
        if (std::abs(h(c)) < std::abs(h(d))) {
            b = d;
        } else {
            a = c;
        }
    }
    return 0.5 * (a + b);
}

/// Parameter sets of the two-panel reference spectra, in units of kappa_a.
inline nitsim::SystemParams symmetric_windows() {
    nitsim::SystemParams s;
    s.epsilon = 0.03;
    s.lambda = 0.5;
    s.g = 0.5;
    s.kappa_a = 1.0;
    s.kappa_b = 1e-3;
    s.gamma = 1e-3;
    s.gamma_phi = 1e-3;
    return s;
}

inline nitsim::SystemParams unequal_couplings() {
    nitsim::SystemParams s = symmetric_windows();
    s.lambda = 1.0;
    s.g = 0.15;
    return s;
}

}  // namespace oracle
