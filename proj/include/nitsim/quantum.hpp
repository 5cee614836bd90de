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
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "nitsim/model.hpp"
#include "nitsim/ode.hpp"

namespace nitsim::quantum {

using Index = Eigen::Index;
using SparseMatrix = Eigen::SparseMatrix<complex, Eigen::ColMajor>;
using DenseMatrix = Eigen::MatrixXcd;

inline constexpr std::size_t kDefaultSuperoperatorCap = 250000;

/// Fock truncations of the NEM mode (n_a) and the ion motional mode (n_b).
///
/// The state space is qubit (x) Fock(a) (x) Fock(b), dimension 2 n_a n_b, with
/// the qubit ordered {|g>, |e>}. The flat index of |q, i_a, i_b> is
/// q n_a n_b + i_a n_b + i_b.
struct HilbertSpec {
    int n_a = 5;
    int n_b = 5;
    std::size_t superoperator_cap = kDefaultSuperoperatorCap;  ///< bound on dim^2

    Index dim() const noexcept { return 2 * static_cast<Index>(n_a) * n_b; }
    Index index(int qubit, int n_a_level, int n_b_level) const noexcept {
        return (static_cast<Index>(qubit) * n_a + n_a_level) * n_b + n_b_level;
    }
    /// Throws DomainError for truncations below 2, DimensionError above the cap.
    void validate() const;

    bool operator==(const HilbertSpec&) const = default;
};

struct Operator {
    SparseMatrix matrix;
    bool hermitian = false;

    Index dim() const noexcept { return matrix.rows(); }
    /// max |A - A^dagger|
    double hermiticity_error() const;
    Operator adjoint() const;
};

/// Ladder and Pauli operators on the full truncated space.
struct OperatorSet {
    HilbertSpec spec;
    Operator a;
    Operator b;
    Operator sigma_minus;
    Operator sigma_z;
    Operator identity;
};

OperatorSet build_operators(const HilbertSpec& spec);

/// Process-wide cache keyed by (n_a, n_b); returned sets are immutable.
std::shared_ptr<const OperatorSet> cached_operators(const HilbertSpec& spec);

/// Driven Hamiltonian in the probe frame, in rate units:
///   (Delta_q/2) sz + Delta_a a^+a + Delta_b b^+b - lambda (a b^+ + b a^+)
///   + g (s+ b + s- b^+) + eps a^+ + eps^* a
Operator build_hamiltonian(const SystemParams& sys, const HilbertSpec& spec);

/// How the qubit dephasing rate enters the dissipator.
enum class DephasingConvention {
    /// (gamma_phi/4) D[sz]: coherence decays at gamma_phi, matching kappa_q = 2 gamma_phi + gamma.
    coherence_rate,
    /// (gamma_phi/2) D[sz]: coherence decays at 2 gamma_phi.
    printed_prefactor,
};

struct LiouvillianOptions {
    DephasingConvention dephasing = DephasingConvention::coherence_rate;
};

/// Generator acting on column-stacked density matrices, vec(rho)[i + j dim] = rho(i, j).
struct Liouvillian {
    Index dim = 0;
    SparseMatrix matrix;

    Index dim2() const noexcept { return dim * dim; }
    /// Largest entry modulus, the scale for residual checks.
    double max_abs() const;
    /// max_k |sum_i L(i + i dim, k)|; zero for a trace-preserving generator.
    double trace_preservation_error() const;
};

/// One dissipation channel: rate * D[op], D[c] rho = 2 c rho c^+ - {c^+ c, rho}.
struct Channel {
    double rate = 0.0;
    Operator op;
};

/// -i[H, .] plus the listed channels.
Liouvillian assemble_liouvillian(const Operator& hamiltonian, const std::vector<Channel>& channels);

/// Hamiltonian part of the generator alone, -i(I (x) H - H^T (x) I).
SparseMatrix commutator_superoperator(const SparseMatrix& h);

/// Full master-equation generator with channels (gamma/2) D[s-], dephasing per `options`,
/// (kappa_a/2) D[a] and (kappa_b/2) D[b].
Liouvillian build_liouvillian(const SystemParams& sys, const HilbertSpec& spec,
                              const LiouvillianOptions& options = {});

class DensityMatrix {
public:
    DensityMatrix() = default;
    explicit DensityMatrix(DenseMatrix m);

    /// |i><i|
    static DensityMatrix basis_state(Index dim, Index i);
    static DensityMatrix maximally_mixed(Index dim);
    static DensityMatrix from_vector(const Eigen::VectorXcd& v, Index dim);

    Index dim() const noexcept { return matrix_.rows(); }
    const DenseMatrix& matrix() const noexcept { return matrix_; }
    Eigen::VectorXcd to_vector() const;

    complex trace() const { return matrix_.trace(); }
    double hermiticity_error() const;
    double min_eigenvalue() const;

private:
    DenseMatrix matrix_;
};

/// Tolerances a returned density matrix must satisfy.
struct DensityMatrixChecks {
    double trace_error = 0.0;
    double hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;

    bool ok() const noexcept {
        return trace_error < 1e-10 && hermiticity_error < 1e-10 && min_eigenvalue >= -1e-8;
    }
};

DensityMatrixChecks check(const DensityMatrix& rho);

struct SteadyStateResult {
    DensityMatrix rho;
    double residual = 0.0;       ///< ||L rho||_2
    double generator_scale = 0.0;  ///< max |L_ij|
    int refinement_passes = 0;
    DensityMatrixChecks checks;
};

/// Stationary state of L with unit trace, from the trace-bordered system (first row of L
/// replaced by the trace functional) via sparse LU, with iterative refinement when the
/// residual exceeds 1e-10 max|L|. Throws DegenerateSteadyStateError when the bordered
/// system is singular, NumericalError when the residual or the density-matrix checks fail.
SteadyStateResult steady_state_dm(const Liouvillian& l);

struct EvolveStats {
    ode::Stats steps;
    double max_trace_drift = 0.0;
    double max_hermiticity_drift = 0.0;  ///< removed by re-symmetrization each step
};

struct EvolveResult {
    DensityMatrix rho;
    EvolveStats stats;
};

using EvolveObserver = std::function<void(double t, const DensityMatrix& rho)>;

/// Adaptive Dormand-Prince propagation of rho0 to t_end with local error tolerance `tol`.
/// rho is replaced by (rho + rho^+)/2 after every accepted step.
EvolveResult evolve(const DensityMatrix& rho0, const Liouvillian& l, double t_end, double tol,
                    const EvolveObserver& observer = {});

/// tr(op rho)
complex expectation(const Operator& op, const DensityMatrix& rho);

/// (1/2) ||rho - sigma||_1
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

struct RwaProbeResult {
    double max_trace_distance = 0.0;
    bool completed = true;
    std::string note;  ///< set when the integration stopped early
};

/// Evolves |g,0,0> under the rotating-wave generator and under the same generator with the
/// counter-rotating terms
///   -lambda (a b e^{-i W t} + a^+ b^+ e^{i W t}) + g (s+ b^+ e^{i W t} + s- b e^{-i W t}),
/// W = omega_sum, reinstated. Returns the largest trace distance between the two states
/// over [0, t_end]. Step-size underflow ends the run early and is reported, not thrown.
RwaProbeResult rwa_error_probe(const SystemParams& sys, const HilbertSpec& spec, double omega_sum,
                               double t_end, double tol = 1e-9);

void write_matrix_market(const Liouvillian& l, std::ostream& out);
/// Rows of `row,col,re,im`.
void write_density_csv(const DensityMatrix& rho, std::ostream& out);

}  // namespace nitsim::quantum
