// dynamics.cpp — Master-equation integration and steady-state solvers

#include "qfridge/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace qfridge {

namespace {

const complex kI(0.0, 1.0);

} // namespace

MasterEquation::MasterEquation(Operator hamiltonian, DissipatorSet dissipators)
    : hamiltonian_(std::move(hamiltonian)), dissipators_(std::move(dissipators))
{
    const Eigen::Index d = hamiltonian_.rows();
    if (hamiltonian_.cols() != d) throw std::invalid_argument("MasterEquation: Hamiltonian not square");
    effective_ = hamiltonian_;
    cache_.resize(dissipators_.baths.size());
    for (std::size_t r = 0; r < dissipators_.baths.size(); ++r) {
        for (const LindbladTerm& t : dissipators_.baths[r]) {
            if (t.jump.rows() != d || t.jump.cols() != d) {
                throw std::invalid_argument("MasterEquation: jump operator shape mismatch");
            }
            if (t.rate < 0.0) throw std::invalid_argument("MasterEquation: negative rate");
            CachedTerm c{t.jump, t.jump.adjoint(), Operator(), t.rate};
            c.decay = c.jump_dag * c.jump;
            effective_ -= (0.5 * t.rate) * kI * c.decay;
            cache_[r].push_back(std::move(c));
        }
    }
}

Operator MasterEquation::rhs(const Operator& rho) const
{
    Operator out = -kI * (effective_ * rho - rho * effective_.adjoint());
    for (const auto& bath : cache_) {
        for (const CachedTerm& c : bath) out.noalias() += c.rate * (c.jump * rho * c.jump_dag);
    }
    return out;
}

Operator MasterEquation::bath_action(const Operator& rho, std::size_t bath) const
{
    if (bath >= cache_.size()) throw std::invalid_argument("bath_action: bath index out of range");
    Operator out = Operator::Zero(rho.rows(), rho.cols());
    for (const CachedTerm& c : cache_[bath]) {
        out.noalias() += c.rate * (c.jump * rho * c.jump_dag - 0.5 * (c.decay * rho + rho * c.decay));
    }
    return out;
}

Operator qme_rhs(const Operator& rho, const Operator& hamiltonian, const DissipatorSet& dissipators)
{
    if (rho.rows() != hamiltonian.rows() || rho.cols() != hamiltonian.cols()) {
        throw std::invalid_argument("qme_rhs: state and Hamiltonian shapes differ");
    }
    Operator out = -kI * (hamiltonian * rho - rho * hamiltonian);
    for (const auto& bath : dissipators.baths) out += dissipator_action(rho, bath);
    return out;
}

Operator qme_rhs(const Operator& rho, const Hamiltonian& hamiltonian, const DissipatorSet& dissipators)
{
    return qme_rhs(rho, hamiltonian.system, dissipators);
}

Operator dissipator_action(const Operator& rho, const std::vector<LindbladTerm>& terms)
{
    Operator out = Operator::Zero(rho.rows(), rho.cols());
    for (const LindbladTerm& t : terms) {
        const Operator dag = t.jump.adjoint();
        const Operator decay = dag * t.jump;
        out.noalias() += t.rate * (t.jump * rho * dag - 0.5 * (decay * rho + rho * decay));
    }
    return out;
}

Operator rk4_step(const Operator& rho, double dt, const RhsFunction& rhs)
{
    if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be positive");
    const complex tr0 = rho.trace();
    Operator next = hermitize(rk4_advance(rho, dt, rhs));
    const complex tr = next.trace();
    if (std::abs(tr - tr0) > kMaxTraceDriftPerStep) {
        std::ostringstream os;
        os << "rk4_step: trace drifted by " << std::abs(tr - tr0) << " in one step; dt = " << dt << " is too large";
        throw std::runtime_error(os.str());
    }
    next /= tr.real();
    return next;
}

SectorGenerator::SectorGenerator(const MasterEquation& equation, double prune_tol) : dim_(equation.dim())
{
    const Eigen::Index d = dim_;
    if (d > 4096) throw std::invalid_argument("SectorGenerator: dimension too large");

    const Operator& k_eff = equation.effective_hamiltonian();
    double scale = k_eff.cwiseAbs().maxCoeff();
    struct Jump {
        Eigen::SparseMatrix<complex> op;  // column major
        double rate;
    };
    std::vector<Jump> jumps;
    for (const auto& bath : equation.dissipators().baths) {
        for (const LindbladTerm& t : bath) {
            if (t.rate == 0.0) continue;
            scale = std::max(scale, t.jump.cwiseAbs().maxCoeff());
            jumps.push_back({Eigen::SparseMatrix<complex>(), t.rate});
        }
    }
    const double cut = prune_tol * std::max(1.0, scale);
    auto sparsify = [cut](const Operator& m) {
        Eigen::SparseMatrix<complex> s = m.sparseView();
        s.prune([cut](Eigen::Index, Eigen::Index, const complex& v) { return std::abs(v) > cut; });
        s.makeCompressed();
        return s;
    };
    const Eigen::SparseMatrix<complex> k_sparse = sparsify(k_eff);
    {
        std::size_t n = 0;
        for (const auto& bath : equation.dissipators().baths) {
            for (const LindbladTerm& t : bath) {
                if (t.rate == 0.0) continue;
                jumps[n++].op = sparsify(t.jump);
            }
        }
    }

    index_of_.assign(static_cast<std::size_t>(d * d), -1);
    std::deque<int> queue;
    auto visit = [&](Eigen::Index a, Eigen::Index b) {
        const std::size_t flat = static_cast<std::size_t>(a * d + b);
        if (index_of_[flat] >= 0) return;
        index_of_[flat] = static_cast<int>(basis_.size());
        basis_.emplace_back(static_cast<int>(a), static_cast<int>(b));
        queue.push_back(index_of_[flat]);
    };
    for (Eigen::Index a = 0; a < d; ++a) visit(a, a);

    // Column (c, e) of the generator, i.e. the image of |c><e|:
    //   -i K|c><e| + i |c><e| K^dag + sum gamma A|c><e|A^dag
    std::vector<Eigen::Triplet<complex>> triplets;
    while (!queue.empty()) {
        const int col = queue.front();
        queue.pop_front();
        const auto [c, e] = basis_[static_cast<std::size_t>(col)];
        std::vector<std::pair<std::pair<Eigen::Index, Eigen::Index>, complex>> entries;
        for (Eigen::SparseMatrix<complex>::InnerIterator it(k_sparse, c); it; ++it) {
            entries.push_back({{it.row(), e}, -kI * it.value()});
        }
        for (Eigen::SparseMatrix<complex>::InnerIterator it(k_sparse, e); it; ++it) {
            entries.push_back({{c, it.row()}, kI * std::conj(it.value())});
        }
        for (const Jump& j : jumps) {
            for (Eigen::SparseMatrix<complex>::InnerIterator ia(j.op, c); ia; ++ia) {
                for (Eigen::SparseMatrix<complex>::InnerIterator ib(j.op, e); ib; ++ib) {
                    entries.push_back({{ia.row(), ib.row()}, j.rate * ia.value() * std::conj(ib.value())});
                }
            }
        }
        for (const auto& [ab, value] : entries) {
            visit(ab.first, ab.second);
            const int row = index_of_[static_cast<std::size_t>(ab.first * d + ab.second)];
            triplets.emplace_back(row, col, value);
        }
    }

    const Eigen::Index n = size();
    matrix_.resize(n, n);
    matrix_.setFromTriplets(triplets.begin(), triplets.end());
    matrix_.makeCompressed();

    partner_.resize(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const auto [a, b] = basis_[i];
        const int p = index_of_[static_cast<std::size_t>(b * d + a)];
        if (p < 0) throw std::logic_error("SectorGenerator: sector not closed under transposition");
        partner_[i] = p;
        if (a == b) diagonal_.push_back(static_cast<int>(i));
    }
}

Eigen::VectorXcd SectorGenerator::pack(const Operator& rho) const
{
    if (rho.rows() != dim_ || rho.cols() != dim_) throw std::invalid_argument("SectorGenerator::pack: shape mismatch");
    Eigen::VectorXcd v(size());
    for (std::size_t i = 0; i < basis_.size(); ++i) v(static_cast<Eigen::Index>(i)) = rho(basis_[i].first, basis_[i].second);
    const double outside = (rho.squaredNorm() - v.squaredNorm());
    if (outside > 1e-24 * std::max(1.0, rho.squaredNorm())) {
        throw std::invalid_argument("SectorGenerator::pack: state has weight outside the sector");
    }
    return v;
}

Operator SectorGenerator::unpack(const Eigen::VectorXcd& v) const
{
    Operator rho = Operator::Zero(dim_, dim_);
    for (std::size_t i = 0; i < basis_.size(); ++i) rho(basis_[i].first, basis_[i].second) = v(static_cast<Eigen::Index>(i));
    return rho;
}

complex SectorGenerator::trace(const Eigen::VectorXcd& v) const
{
    complex t = 0.0;
    for (int i : diagonal_) t += v(i);
    return t;
}

void SectorGenerator::hermitize(Eigen::VectorXcd& v) const
{
    for (std::size_t i = 0; i < partner_.size(); ++i) {
        const int p = partner_[i];
        if (static_cast<int>(i) > p) continue;
        const complex avg = 0.5 * (v(static_cast<Eigen::Index>(i)) + std::conj(v(p)));
        v(static_cast<Eigen::Index>(i)) = avg;
        v(p) = std::conj(avg);
    }
}

void EvolutionConfig::validate() const
{
    if (!(dt > 0.0)) throw std::invalid_argument("evolution: dt must be positive");
    if (!(t_max > 0.0)) throw std::invalid_argument("evolution: t_max must be positive");
    if (!(convergence_tol > 0.0)) throw std::invalid_argument("evolution: convergence_tol must be positive");
    if (record_stride < 1) throw std::invalid_argument("evolution: record_stride must be >= 1");
    if (sustain_samples < 1) throw std::invalid_argument("evolution: sustain_samples must be >= 1");
}

namespace {

// Shared bookkeeping for one sample of the trajectory.
struct Monitor {
    const EvolutionConfig& config;
    std::span<const int> dims;
    SteadyState& result;
    TrajectoryRecord& record;
    int consecutive = 0;

    bool sample(double t, const Operator& rho, double residual)
    {
        record.times.push_back(t);
        record.residuals.push_back(residual);
        if (config.record_reduced_states && !dims.empty()) {
            std::vector<Operator> reduced;
            for (std::size_t r = 0; r < dims.size(); ++r) reduced.push_back(partial_trace(rho, r, dims));
            record.reduced.push_back(std::move(reduced));
        }
        result.max_hermiticity_residual = std::max(result.max_hermiticity_residual, hermiticity_residual(rho));
        result.max_trace_drift = std::max(result.max_trace_drift, std::abs(rho.trace() - 1.0));
        if (config.monitor_positivity) {
            Eigen::SelfAdjointEigenSolver<Operator> es(hermitize(rho), Eigen::EigenvaluesOnly);
            result.min_eigenvalue = std::min(result.min_eigenvalue, es.eigenvalues().minCoeff());
        }
        consecutive = residual < config.convergence_tol ? consecutive + 1 : 0;
        return consecutive >= config.sustain_samples;
    }
};

} // namespace

std::pair<SteadyState, TrajectoryRecord> evolve_to_steady(const DensityMatrix& rho0, const Hamiltonian& hamiltonian,
                                                          const DissipatorSet& dissipators,
                                                          const EvolutionConfig& config, std::span<const int> dims)
{
    config.validate();
    if (rho0.dim() != hamiltonian.system.rows()) throw std::invalid_argument("evolve_to_steady: shape mismatch");
    if (!dims.empty() && total_dim(dims) != rho0.dim()) {
        throw std::invalid_argument("evolve_to_steady: site dimensions do not match the state");
    }

    const MasterEquation equation(hamiltonian.system, dissipators);
    SteadyState result;
    TrajectoryRecord record;
    result.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Operator>(rho0.matrix(), Eigen::EigenvaluesOnly)
                                .eigenvalues()
                                .minCoeff();
    Monitor monitor{config, dims, result, record};

    const auto max_steps = static_cast<std::size_t>(std::ceil(config.t_max / config.dt));
    const double dt = config.dt;

    if (config.backend == IntegrationBackend::Dense) {
        Operator rho = rho0.matrix();
        const RhsFunction rhs = [&](const Operator& x) { return equation.rhs(x); };
        bool done = monitor.sample(0.0, rho, equation.rhs(rho).norm());
        std::size_t step = 0;
        while (!done && step < max_steps) {
            rho = rk4_step(rho, dt, rhs);
            ++step;
            if (step % static_cast<std::size_t>(config.record_stride) == 0 || step == max_steps) {
                done = monitor.sample(static_cast<double>(step) * dt, rho, equation.rhs(rho).norm());
            }
        }
        result.state = rho;
        result.steps = step;
        result.time = static_cast<double>(step) * dt;
        result.residual = equation.rhs(rho).norm();
        result.converged = done;
        return {std::move(result), std::move(record)};
    }

    const SectorGenerator generator(equation);
    Eigen::VectorXcd v = generator.pack(rho0.matrix());
    const auto rhs = [&](const Eigen::VectorXcd& x) -> Eigen::VectorXcd { return generator.apply(x); };
    bool done = monitor.sample(0.0, rho0.matrix(), generator.apply(v).norm());
    std::size_t step = 0;
    const auto stride = static_cast<std::size_t>(config.record_stride);

    // For a linear generator one RK4 step is the matrix polynomial
    // P = 1 + hL + (hL)^2/2 + (hL)^3/6 + (hL)^4/24. On small sectors P^stride is
    // formed once, so a whole sampling interval costs one dense product.
    if (generator.size() <= kStridePropagatorMaxSize && stride > 1) {
        const Operator hl = dt * Operator(generator.matrix());
        const Eigen::Index n = generator.size();
        const Operator id = Operator::Identity(n, n);
        const Operator p = id + hl * (id + hl * (id + hl * (id + hl / 4.0) / 3.0) / 2.0);
        Operator q = id, base = p;
        for (std::size_t e = stride; e > 0; e >>= 1) {
            if (e & 1) q = q * base;
            if (e > 1) base = base * base;
        }
        while (!done && step + stride <= max_steps) {
            const complex tr0 = generator.trace(v);
            v = q * v;
            generator.hermitize(v);
            const complex tr = generator.trace(v);
            if (std::abs(tr - tr0) > kMaxTraceDriftPerStep * static_cast<double>(stride)) {
                std::ostringstream os;
                os << "evolve_to_steady: trace drifted by " << std::abs(tr - tr0) << " over " << stride
                   << " steps; dt = " << dt << " is too large";
                throw std::runtime_error(os.str());
            }
            v /= tr.real();
            step += stride;
            done = monitor.sample(static_cast<double>(step) * dt, generator.unpack(v), generator.apply(v).norm());
        }
    }

    while (!done && step < max_steps) {
        const complex tr0 = generator.trace(v);
        v = rk4_advance(v, dt, rhs);
        generator.hermitize(v);
        const complex tr = generator.trace(v);
        if (std::abs(tr - tr0) > kMaxTraceDriftPerStep) {
            std::ostringstream os;
            os << "evolve_to_steady: trace drifted by " << std::abs(tr - tr0) << " in one step; dt = " << dt
               << " is too large";
            throw std::runtime_error(os.str());
        }
        v /= tr.real();
        ++step;
        if (step % static_cast<std::size_t>(config.record_stride) == 0 || step == max_steps) {
            // The sector generator is exact, so ||L v|| equals the Frobenius norm of the matrix-form rhs.
            done = monitor.sample(static_cast<double>(step) * dt, generator.unpack(v), generator.apply(v).norm());
        }
    }
    result.state = generator.unpack(v);
    result.steps = step;
    result.time = static_cast<double>(step) * dt;
    result.residual = equation.rhs(result.state).norm();
    result.converged = done;
    return {std::move(result), std::move(record)};
}

NullspaceSteadyState nullspace_steady_state(const Operator& hamiltonian, const DissipatorSet& dissipators)
{
    const Eigen::Index d = hamiltonian.rows();
    if (d > kNullspaceMaxDim) {
        throw std::invalid_argument("nullspace_steady_state: dimension " + std::to_string(d) +
                                    " exceeds the dense-solve limit of " + std::to_string(kNullspaceMaxDim));
    }
    const MasterEquation equation(hamiltonian, dissipators);

    // Probe scale for deciding which outputs are structurally nonzero.
    double scale = hamiltonian.cwiseAbs().maxCoeff();
    for (const auto& bath : dissipators.baths) {
        for (const LindbladTerm& t : bath) scale = std::max(scale, t.rate * t.jump.squaredNorm());
    }
    const double cut = 1e-14 * std::max(1.0, scale);

    std::vector<int> index_of(static_cast<std::size_t>(d * d), -1);
    std::vector<std::pair<Eigen::Index, Eigen::Index>> basis;
    std::deque<int> queue;
    auto visit = [&](Eigen::Index a, Eigen::Index b) {
        const std::size_t flat = static_cast<std::size_t>(a * d + b);
        if (index_of[flat] >= 0) return;
        index_of[flat] = static_cast<int>(basis.size());
        basis.emplace_back(a, b);
        queue.push_back(index_of[flat]);
    };
    for (Eigen::Index a = 0; a < d; ++a) visit(a, a);

    std::vector<std::vector<std::pair<int, complex>>> columns;
    Operator unit = Operator::Zero(d, d);
    while (!queue.empty()) {
        const int col = queue.front();
        queue.pop_front();
        const auto [c, e] = basis[static_cast<std::size_t>(col)];
        unit(c, e) = 1.0;
        const Operator image = equation.rhs(unit);
        unit(c, e) = 0.0;
        std::vector<std::pair<int, complex>> entries;
        for (Eigen::Index b = 0; b < d; ++b) {
            for (Eigen::Index a = 0; a < d; ++a) {
                if (std::abs(image(a, b)) <= cut) continue;
                visit(a, b);
                entries.emplace_back(index_of[static_cast<std::size_t>(a * d + b)], image(a, b));
            }
        }
        if (columns.size() <= static_cast<std::size_t>(col)) columns.resize(static_cast<std::size_t>(col) + 1);
        columns[static_cast<std::size_t>(col)] = std::move(entries);
    }

    const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd system = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
        for (const auto& [row, value] : columns[static_cast<std::size_t>(col)]) system(row, col) = value;
    }
    // Trace preservation makes the diagonal rows linearly dependent; replace the
    // first one (sector index 0 is |0><0|) by the normalization condition.
    system.row(0).setZero();
    for (Eigen::Index a = 0; a < d; ++a) system(0, index_of[static_cast<std::size_t>(a * d + a)]) = 1.0;
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
    rhs(0) = 1.0;

    Eigen::FullPivLU<Eigen::MatrixXcd> lu(system);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) {
        throw std::runtime_error("nullspace_steady_state: stationary space is degenerate (rank " +
                                 std::to_string(lu.rank()) + " of " + std::to_string(n) + ")");
    }
    const Eigen::VectorXcd x = lu.solve(rhs);

    Operator rho = Operator::Zero(d, d);
    for (Eigen::Index i = 0; i < n; ++i) rho(basis[static_cast<std::size_t>(i)].first, basis[static_cast<std::size_t>(i)].second) = x(i);
    rho = hermitize(rho);
    rho /= rho.trace().real();

    NullspaceSteadyState out;
    out.residual = equation.rhs(rho).norm();
    out.state = std::move(rho);
    out.sector_size = n;
    return out;
}

} // namespace qfridge
