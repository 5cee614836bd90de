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

#include <stdexcept>
#include <string>

namespace nitsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter violates its documented domain (non-positive mass, negative rate, ...).
class DomainError : public Error {
public:
    DomainError(std::string field, const std::string& what)
        : Error(what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Base for failures of a numerical procedure on otherwise valid input.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// The steady-state denominator vanished (no dissipation on the real detuning axis).
class SingularityError : public NumericalError {
public:
    SingularityError(double delta_p, const std::string& what)
        : NumericalError(what), delta_p_(delta_p) {}
    double delta_p() const noexcept { return delta_p_; }

private:
    double delta_p_;
};

/// Adaptive step size fell below the underflow floor.
class StiffnessError : public NumericalError {
public:
    StiffnessError(double t, double dt, const std::string& what)
        : NumericalError(what), t_(t), dt_(dt) {}
    double time() const noexcept { return t_; }
    double step() const noexcept { return dt_; }

private:
    double t_;
    double dt_;
};

/// Relaxation did not reach the requested residual within the time budget.
class ConvergenceError : public NumericalError {
public:
    ConvergenceError(double slowest_rate, const std::string& what)
        : NumericalError(what), slowest_rate_(slowest_rate) {}
    double slowest_rate() const noexcept { return slowest_rate_; }

private:
    double slowest_rate_;
};

/// The Liouvillian has more than one stationary state.
class DegenerateSteadyStateError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Hilbert-space size exceeds the configured cap, or operator dimensions disagree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace nitsim
