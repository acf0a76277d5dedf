// dynamics.hpp — GKSL right-hand side, RK4 integration to the steady state, null-space oracle

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "qfridge/baths.hpp"

namespace qfridge {

/// -i[H, rho] + sum_r L_r(rho) with cached A^dag and A^dag A per term.
class MasterEquation {
public:
    MasterEquation(Operator hamiltonian, DissipatorSet dissipators);

    Operator rhs(const Operator& rho) const;

    /// L_r(rho) for a single bath.
    Operator bath_action(const Operator& rho, std::size_t bath) const;

    const Operator& hamiltonian() const noexcept { return hamiltonian_; }
    const DissipatorSet& dissipators() const noexcept { return dissipators_; }
    Eigen::Index dim() const noexcept { return hamiltonian_.rows(); }

    /// H - (i/2) sum gamma A^dag A, so that rhs = -i(K rho - rho K^dag) + sum gamma A rho A^dag.
    const Operator& effective_hamiltonian() const noexcept { return effective_; }

private:
    struct CachedTerm {
        Operator jump;
        Operator jump_dag;
        Operator decay;  // A^dag A
        double rate;
    };

    Operator hamiltonian_;
    DissipatorSet dissipators_;
    std::vector<std::vector<CachedTerm>> cache_;
    Operator effective_;
};

Operator qme_rhs(const Operator& rho, const Operator& hamiltonian, const DissipatorSet& dissipators);
Operator qme_rhs(const Operator& rho, const Hamiltonian& hamiltonian, const DissipatorSet& dissipators);

/// sum_w gamma (A rho A^dag - {A^dag A, rho} / 2) over one bath's terms.
Operator dissipator_action(const Operator& rho, const std::vector<LindbladTerm>& terms);

/// Unmodified classical four-stage step y + dt (k1 + 2 k2 + 2 k3 + k4) / 6.
template <class State, class Rhs>
State rk4_advance(const State& y, double dt, const Rhs& f)
{
    const State k1 = f(y);
    const State k2 = f(State(y + (0.5 * dt) * k1));
    const State k3 = f(State(y + (0.5 * dt) * k2));
    const State k4 = f(State(y + dt * k3));
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

using RhsFunction = std::function<Operator(const Operator&)>;

/// Per-step trace drift above this means the step size is too large.
inline constexpr double kMaxTraceDriftPerStep = 1e-8;

/// RK4 step followed by (rho + rho^dag)/2 and trace renormalization. Positivity is not enforced.
Operator rk4_step(const Operator& rho, double dt, const RhsFunction& rhs);

/// Vectorized generator restricted to the coordinate subspace spanned by the
/// matrix units |a><b| reachable from the diagonal. Every state that starts
/// diagonal (thermal product states) stays inside this subspace exactly.
class SectorGenerator {
public:
    explicit SectorGenerator(const MasterEquation& equation, double prune_tol = 1e-14);

    Eigen::Index size() const noexcept { return static_cast<Eigen::Index>(basis_.size()); }
    Eigen::Index dim() const noexcept { return dim_; }

    const Eigen::SparseMatrix<complex, Eigen::RowMajor>& matrix() const noexcept { return matrix_; }

    /// Throws if `rho` has entries outside the sector.
    Eigen::VectorXcd pack(const Operator& rho) const;
    Operator unpack(const Eigen::VectorXcd& v) const;

    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return matrix_ * v; }

    complex trace(const Eigen::VectorXcd& v) const;
    void hermitize(Eigen::VectorXcd& v) const;

private:
    Eigen::Index dim_;
    std::vector<std::pair<int, int>> basis_;
    std::vector<int> index_of_;  // row-major d*d -> sector index, -1 outside
    std::vector<int> partner_;   // index of the transposed element
    std::vector<int> diagonal_;
    Eigen::SparseMatrix<complex, Eigen::RowMajor> matrix_;
};

/// Sector size up to which the sector backend advances by a precomputed
/// RK4 propagator over a whole sampling interval.
inline constexpr Eigen::Index kStridePropagatorMaxSize = 600;

enum class IntegrationBackend {
    Sector,  // RK4 on the sparse vectorized generator
    Dense,   // RK4 on the matrix form of the right-hand side
};

struct EvolutionConfig {
    double dt = 0.01;
    double t_max = 1e6;
    double convergence_tol = 1e-9;
    int record_stride = 100;      // steps between samples
    int sustain_samples = 100;    // consecutive samples below tolerance
    IntegrationBackend backend = IntegrationBackend::Sector;
    bool record_reduced_states = true;
    bool monitor_positivity = true;

    void validate() const;
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<std::vector<Operator>> reduced;  // reduced[sample][site]
    std::vector<double> residuals;               // ||rhs||_F at each sample
};

struct SteadyState {
    Operator state;
    bool converged = false;
    double residual = 0.0;  // ||rhs(state)||_F
    double time = 0.0;
    std::size_t steps = 0;
    double min_eigenvalue = 0.0;  // smallest eigenvalue seen over all monitored samples
    double max_trace_drift = 0.0;
    double max_hermiticity_residual = 0.0;

    DensityMatrix density() const { return DensityMatrix(state); }
};

/// Integrates until ||rhs||_F < convergence_tol for `sustain_samples` consecutive samples,
/// or until t_max. Non-convergence is reported through `converged`, not thrown.
std::pair<SteadyState, TrajectoryRecord> evolve_to_steady(const DensityMatrix& rho0, const Hamiltonian& hamiltonian,
                                                          const DissipatorSet& dissipators,
                                                          const EvolutionConfig& config,
                                                          std::span<const int> dims = {});

struct NullspaceSteadyState {
    Operator state;
    double residual = 0.0;
    Eigen::Index sector_size = 0;
};

/// Upper bound on the total dimension for the dense null-space solve.
inline constexpr Eigen::Index kNullspaceMaxDim = 100;

/// Independent steady-state oracle: probes the matrix-form generator column by
/// column on the sector reachable from the diagonal, then solves the dense
/// linear system with the trace constraint. Throws when the stationary space is
/// degenerate or the system exceeds kNullspaceMaxDim.
NullspaceSteadyState nullspace_steady_state(const Operator& hamiltonian, const DissipatorSet& dissipators);

} // namespace qfridge
