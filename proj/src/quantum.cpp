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

#include "nitsim/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/KroneckerProduct>

#include "nitsim/errors.hpp"
#include "nitsim/format.hpp"

namespace nitsim::quantum {

namespace {

using namespace std::complex_literals;
using Triplet = Eigen::Triplet<complex>;

SparseMatrix sparse_identity(Index n) {
    SparseMatrix id(n, n);
    id.setIdentity();
    return id;
}

SparseMatrix lowering(int levels) {
    SparseMatrix m(levels, levels);
    std::vector<Triplet> t;
    for (int n = 1; n < levels; ++n) {
        t.emplace_back(n - 1, n, std::sqrt(static_cast<double>(n)));
    }
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

SparseMatrix kron3(const SparseMatrix& q, const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix qa = Eigen::kroneckerProduct(q, a);
    SparseMatrix out = Eigen::kroneckerProduct(qa, b);
    out.makeCompressed();
    return out;
}

SparseMatrix adjoint_of(const SparseMatrix& m) {
    SparseMatrix out = m.adjoint();
    out.makeCompressed();
    return out;
}

double max_abs_of(const SparseMatrix& m) {
    double best = 0.0;
    for (Index k = 0; k < m.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
            best = std::max(best, std::abs(it.value()));
        }
    }
    return best;
}

void require_same_dim(Index a, Index b, const char* what) {
    if (a != b) {
        std::ostringstream msg;
        msg << what << ": dimension mismatch (" << a << " vs " << b << ")";
        throw DimensionError(msg.str());
    }
}

/// Replace rho by its Hermitian part, in column-stacked form. Returns the removed asymmetry.
double hermitize(complex* v, Index dim) {
    double drift = 0.0;
    for (Index j = 0; j < dim; ++j) {
        for (Index i = 0; i <= j; ++i) {
            complex& upper = v[i + j * dim];
            complex& lower = v[j + i * dim];
            drift = std::max(drift, std::abs(upper - std::conj(lower)));
            const complex avg = 0.5 * (upper + std::conj(lower));
            upper = avg;
            lower = std::conj(avg);
        }
    }
    return drift;
}

complex vector_trace(const complex* v, Index dim) {
    complex tr = 0.0;
    for (Index i = 0; i < dim; ++i) {
        tr += v[i + i * dim];
    }
    return tr;
}

}  // namespace

void HilbertSpec::validate() const {
    if (n_a < 2) {
        throw DomainError("n_a", "n_a must be >= 2");
    }
    if (n_b < 2) {
        throw DomainError("n_b", "n_b must be >= 2");
    }
    const auto d = static_cast<std::size_t>(dim());
    if (d * d > superoperator_cap) {
        std::ostringstream msg;
        msg << "superoperator dimension " << d * d << " for (n_a, n_b) = (" << n_a << ", " << n_b
            << ") exceeds the cap " << superoperator_cap;
        throw DimensionError(msg.str());
    }
}

double Operator::hermiticity_error() const {
    SparseMatrix diff = matrix - SparseMatrix(matrix.adjoint());
    return max_abs_of(diff);
}

Operator Operator::adjoint() const { return Operator{adjoint_of(matrix), hermitian}; }

OperatorSet build_operators(const HilbertSpec& spec) {
    spec.validate();
    const SparseMatrix id2 = sparse_identity(2);
    const SparseMatrix id_a = sparse_identity(spec.n_a);
    const SparseMatrix id_b = sparse_identity(spec.n_b);

    SparseMatrix sm(2, 2);  // |g><e| with |g> = 0, |e> = 1
    sm.insert(0, 1) = 1.0;
    SparseMatrix sz(2, 2);
    sz.insert(0, 0) = -1.0;
    sz.insert(1, 1) = 1.0;

    OperatorSet ops;
    ops.spec = spec;
    ops.a = {kron3(id2, lowering(spec.n_a), id_b), false};
    ops.b = {kron3(id2, id_a, lowering(spec.n_b)), false};
    ops.sigma_minus = {kron3(sm, id_a, id_b), false};
    ops.sigma_z = {kron3(sz, id_a, id_b), true};
    ops.identity = {sparse_identity(spec.dim()), true};
    return ops;
}

std::shared_ptr<const OperatorSet> cached_operators(const HilbertSpec& spec) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const OperatorSet>> cache;
    spec.validate();
    const std::lock_guard lock(mutex);
    auto& slot = cache[{spec.n_a, spec.n_b}];
    if (!slot) {
        slot = std::make_shared<const OperatorSet>(build_operators(spec));
    }
    return slot;
}

Operator build_hamiltonian(const SystemParams& sys, const HilbertSpec& spec) {
    const auto ops = cached_operators(spec);
    const SparseMatrix& a = ops->a.matrix;
    const SparseMatrix& b = ops->b.matrix;
    const SparseMatrix& sm = ops->sigma_minus.matrix;
    const SparseMatrix ad = adjoint_of(a);
    const SparseMatrix bd = adjoint_of(b);
    const SparseMatrix sp = adjoint_of(sm);

    SparseMatrix h = complex(0.5 * sys.delta_q()) * ops->sigma_z.matrix;
    h += complex(sys.delta_p) * SparseMatrix(ad * a);
    h += complex(sys.delta_b()) * SparseMatrix(bd * b);
    h -= complex(sys.lambda) * SparseMatrix(a * bd + b * ad);
    h += complex(sys.g) * SparseMatrix(sp * b + sm * bd);
    h += sys.epsilon * ad + std::conj(sys.epsilon) * a;
    h.prune(complex(0.0));
    h.makeCompressed();
    return Operator{std::move(h), true};
}

SparseMatrix commutator_superoperator(const SparseMatrix& h) {
    const SparseMatrix id = sparse_identity(h.rows());
    const SparseMatrix ht = h.transpose();
    SparseMatrix left = Eigen::kroneckerProduct(id, h);
    SparseMatrix right = Eigen::kroneckerProduct(ht, id);
    SparseMatrix out = complex(0.0, -1.0) * (left - right);
    out.makeCompressed();
    return out;
}

Liouvillian assemble_liouvillian(const Operator& hamiltonian, const std::vector<Channel>& channels) {
    const Index dim = hamiltonian.dim();
    const SparseMatrix id = sparse_identity(dim);
    SparseMatrix gen = commutator_superoperator(hamiltonian.matrix);
    for (const auto& ch : channels) {
        if (ch.rate == 0.0) {
            continue;
        }
        require_same_dim(ch.op.dim(), dim, "dissipation channel");
        const SparseMatrix& c = ch.op.matrix;
        const SparseMatrix cd = adjoint_of(c);
        const SparseMatrix cdc = cd * c;
        const SparseMatrix cdct = cdc.transpose();
        const SparseMatrix cc = c.conjugate();
        SparseMatrix jump = Eigen::kroneckerProduct(cc, c);
        SparseMatrix left = Eigen::kroneckerProduct(id, cdc);
        SparseMatrix right = Eigen::kroneckerProduct(cdct, id);
        gen += complex(ch.rate) * (2.0 * jump - left - right);
    }
    gen.prune(complex(0.0));
    gen.makeCompressed();
    return Liouvillian{dim, std::move(gen)};
}

Liouvillian build_liouvillian(const SystemParams& sys, const HilbertSpec& spec,
                              const LiouvillianOptions& options) {
    sys.validate();
    const auto ops = cached_operators(spec);
    const double dephasing_coefficient =
        options.dephasing == DephasingConvention::coherence_rate ? 0.25 : 0.5;
    const std::vector<Channel> channels{
        {0.5 * sys.gamma, ops->sigma_minus},
        {dephasing_coefficient * sys.gamma_phi, ops->sigma_z},
        {0.5 * sys.kappa_a, ops->a},
        {0.5 * sys.kappa_b, ops->b},
    };
    return assemble_liouvillian(build_hamiltonian(sys, spec), channels);
}

double Liouvillian::max_abs() const { return max_abs_of(matrix); }

double Liouvillian::trace_preservation_error() const {
    Eigen::VectorXcd col_sums = Eigen::VectorXcd::Zero(dim2());
    for (Index k = 0; k < matrix.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(matrix, k); it; ++it) {
            if (it.row() % (dim + 1) == 0) {
                col_sums[k] += it.value();
            }
        }
    }
    return dim2() == 0 ? 0.0 : col_sums.cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(DenseMatrix m) : matrix_(std::move(m)) {
    if (matrix_.rows() != matrix_.cols()) {
        throw DimensionError("density matrix must be square");
    }
}

DensityMatrix DensityMatrix::basis_state(Index dim, Index i) {
    DenseMatrix m = DenseMatrix::Zero(dim, dim);
    m(i, i) = 1.0;
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
    return DensityMatrix(DenseMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::from_vector(const Eigen::VectorXcd& v, Index dim) {
    require_same_dim(v.size(), dim * dim, "vectorized density matrix");
    return DensityMatrix(Eigen::Map<const DenseMatrix>(v.data(), dim, dim));
}

Eigen::VectorXcd DensityMatrix::to_vector() const {
    return Eigen::Map<const Eigen::VectorXcd>(matrix_.data(), matrix_.size());
}

double DensityMatrix::hermiticity_error() const {
    return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    const DenseMatrix herm = 0.5 * (matrix_ + matrix_.adjoint());
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

DensityMatrixChecks check(const DensityMatrix& rho) {
    return DensityMatrixChecks{std::abs(rho.trace() - 1.0), rho.hermiticity_error(), rho.min_eigenvalue()};
}

SteadyStateResult steady_state_dm(const Liouvillian& l) {
    const Index dim = l.dim;
    const Index n = l.dim2();
    if (n == 0) {
        throw DimensionError("empty Liouvillian");
    }

    // Bordered system: row 0 of L becomes the trace functional, right-hand side e_0.
    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(l.matrix.nonZeros() + dim));
    for (Index k = 0; k < l.matrix.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(l.matrix, k); it; ++it) {
            if (it.row() != 0) {
                triplets.emplace_back(it.row(), it.col(), it.value());
            }
        }
    }
    for (Index i = 0; i < dim; ++i) {
        triplets.emplace_back(0, i + i * dim, 1.0);
    }
    SparseMatrix bordered(n, n);
    bordered.setFromTriplets(triplets.begin(), triplets.end());
    bordered.makeCompressed();
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
    rhs[0] = 1.0;

    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(bordered);
    lu.factorize(bordered);
    Eigen::VectorXcd x;
    if (lu.info() == Eigen::Success) {
        x = lu.solve(rhs);
    }
    if (lu.info() != Eigen::Success || !x.allFinite()) {
        if (n >= 10000) {
            throw DegenerateSteadyStateError("trace-bordered generator is singular: " + lu.lastErrorMessage());
        }
        // Small systems: confirm with a rank-revealing dense factorization.
        const Eigen::FullPivLU<DenseMatrix> dense{DenseMatrix(bordered)};
        if (dense.rank() < n) {
            std::ostringstream msg;
            msg << "stationary state is not unique: bordered generator has rank " << dense.rank() << " < " << n;
            throw DegenerateSteadyStateError(msg.str());
        }
        x = dense.solve(rhs);
    }

    const double scale = l.max_abs();
    const double threshold = 1e-10 * scale;
    auto finish = [&](Eigen::VectorXcd v) {
        hermitize(v.data(), dim);
        v /= vector_trace(v.data(), dim);
        return v;
    };
    Eigen::VectorXcd v = finish(x);
    double residual = (l.matrix * v).norm();
    int passes = 0;
    while (residual >= threshold && passes < 3 && lu.info() == Eigen::Success) {
        const Eigen::VectorXcd correction = lu.solve(rhs - bordered * x);
        x += correction;
        v = finish(x);
        residual = (l.matrix * v).norm();
        ++passes;
    }

    SteadyStateResult result{DensityMatrix::from_vector(v, dim), residual, scale, passes, {}};
    result.checks = check(result.rho);
    if (residual >= threshold) {
        std::ostringstream msg;
        msg << "steady-state residual " << residual << " exceeds " << threshold << " after " << passes
            << " refinement passes";
        throw NumericalError(msg.str());
    }
    if (!result.checks.ok()) {
        std::ostringstream msg;
        msg << "steady state is not a valid density matrix (trace error " << result.checks.trace_error
            << ", hermiticity error " << result.checks.hermiticity_error << ", min eigenvalue "
            << result.checks.min_eigenvalue << ")";
        throw NumericalError(msg.str());
    }
    return result;
}

EvolveResult evolve(const DensityMatrix& rho0, const Liouvillian& l, double t_end, double tol,
                    const EvolveObserver& observer) {
    require_same_dim(rho0.dim(), l.dim, "evolve");
    if (!(t_end >= 0.0)) {
        throw DomainError("t_end", "t_end must be >= 0");
    }
    if (!(tol > 0.0)) {
        throw DomainError("tol", "tol must be > 0");
    }
    const Index dim = l.dim;
    const Eigen::VectorXcd v0 = rho0.to_vector();
    std::vector<complex> x(v0.data(), v0.data() + v0.size());
    const complex trace0 = vector_trace(x.data(), dim);

    EvolveResult result;
    if (observer) {
        observer(0.0, rho0);
    }
    if (t_end > 0.0 && l.matrix.nonZeros() > 0) {
        auto rhs = [&l](const std::vector<complex>& y, std::vector<complex>& dy, double) {
            dy.resize(y.size());
            Eigen::Map<Eigen::VectorXcd>(dy.data(), static_cast<Index>(dy.size())) =
                l.matrix * Eigen::Map<const Eigen::VectorXcd>(y.data(), static_cast<Index>(y.size()));
        };
        auto on_step = [&](std::vector<complex>& y, double t) {
            result.stats.max_hermiticity_drift =
                std::max(result.stats.max_hermiticity_drift, hermitize(y.data(), dim));
            result.stats.max_trace_drift =
                std::max(result.stats.max_trace_drift, std::abs(vector_trace(y.data(), dim) - trace0));
            if (observer) {
                observer(t, DensityMatrix(Eigen::Map<const DenseMatrix>(y.data(), dim, dim)));
            }
            return true;
        };
        result.stats.steps = ode::integrate(rhs, x, 0.0, t_end, {tol, tol}, on_step);
    }
    result.rho = DensityMatrix(Eigen::Map<const DenseMatrix>(x.data(), dim, dim));
    return result;
}

complex expectation(const Operator& op, const DensityMatrix& rho) {
    require_same_dim(op.dim(), rho.dim(), "expectation");
    // tr(A rho) = sum_{ij} A_ij rho_ji
    complex sum = 0.0;
    const DenseMatrix& r = rho.matrix();
    for (Index k = 0; k < op.matrix.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(op.matrix, k); it; ++it) {
            sum += it.value() * r(it.col(), it.row());
        }
    }
    return sum;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho.dim(), sigma.dim(), "trace_distance");
    const DenseMatrix diff = rho.matrix() - sigma.matrix();
    const DenseMatrix herm = 0.5 * (diff + diff.adjoint());
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(herm, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

RwaProbeResult rwa_error_probe(const SystemParams& sys, const HilbertSpec& spec, double omega_sum,
                               double t_end, double tol) {
    if (!(omega_sum > 0.0)) {
        throw DomainError("omega_sum", "omega_sum must be > 0");
    }
    if (!(t_end >= 0.0)) {
        throw DomainError("t_end", "t_end must be >= 0");
    }
    const auto ops = cached_operators(spec);
    const Liouvillian rwa = build_liouvillian(sys, spec);
    const Index dim = rwa.dim;
    const Index n = rwa.dim2();

    const SparseMatrix& a = ops->a.matrix;
    const SparseMatrix& b = ops->b.matrix;
    const SparseMatrix& sm = ops->sigma_minus.matrix;
    // Counter-rotating Hamiltonian e^{-iWt} X + e^{iWt} X^+.
    const SparseMatrix x_op = complex(-sys.lambda) * SparseMatrix(a * b) + complex(sys.g) * SparseMatrix(sm * b);
    const SparseMatrix k_minus = commutator_superoperator(x_op);
    const SparseMatrix k_plus = commutator_superoperator(adjoint_of(x_op));

    RwaProbeResult result;
    if (t_end == 0.0 || (sys.lambda == 0.0 && sys.g == 0.0)) {
        return result;
    }

    // Both trajectories share one state vector so they are sampled at identical times.
    std::vector<complex> x(static_cast<std::size_t>(2 * n), complex(0.0));
    x[0] = 1.0;
    x[static_cast<std::size_t>(n)] = 1.0;
    auto rhs = [&](const std::vector<complex>& y, std::vector<complex>& dy, double t) {
        dy.resize(y.size());
        Eigen::Map<const Eigen::VectorXcd> y1(y.data(), n);
        Eigen::Map<const Eigen::VectorXcd> y2(y.data() + n, n);
        Eigen::Map<Eigen::VectorXcd> d1(dy.data(), n);
        Eigen::Map<Eigen::VectorXcd> d2(dy.data() + n, n);
        const complex phase = std::exp(complex(0.0, -omega_sum * t));
        d1 = rwa.matrix * y1;
        d2 = rwa.matrix * y2;
        d2 += phase * (k_minus * y2);
        d2 += std::conj(phase) * (k_plus * y2);
    };
    auto on_step = [&](std::vector<complex>& y, double) {
        const DensityMatrix r1(Eigen::Map<const DenseMatrix>(y.data(), dim, dim));
        const DensityMatrix r2(Eigen::Map<const DenseMatrix>(y.data() + n, dim, dim));
        result.max_trace_distance = std::max(result.max_trace_distance, trace_distance(r1, r2));
        return false;
    };
    try {
        ode::integrate(rhs, x, 0.0, t_end, {tol, tol}, on_step, std::min(t_end, 0.01 / omega_sum));
    } catch (const StiffnessError& e) {
        result.completed = false;
        result.note = std::string(e.what()) + "; increase the tolerance or reduce omega_sum";
    }
    return result;
}

void write_matrix_market(const Liouvillian& l, std::ostream& out) {
    out << "%%MatrixMarket matrix coordinate complex general\n";
    out << l.dim2() << ' ' << l.dim2() << ' ' << l.matrix.nonZeros() << '\n';
    for (Index k = 0; k < l.matrix.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(l.matrix, k); it; ++it) {
            out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << format_double(it.value().real()) << ' '
                << format_double(it.value().imag()) << '\n';
        }
    }
}

void write_density_csv(const DensityMatrix& rho, std::ostream& out) {
    out << "row,col,re,im\n";
    const DenseMatrix& m = rho.matrix();
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            out << i << ',' << j << ',' << format_double(m(i, j).real()) << ',' << format_double(m(i, j).imag())
                << '\n';
        }
    }
}

}  // namespace nitsim::quantum
