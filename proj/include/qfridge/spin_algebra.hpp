// spin_algebra.hpp — Spin-j operators, tensor-product embedding and Hermitian matrix functions
//
// Basis convention used throughout the library: the single-site basis is
// ordered by descending magnetization, index k <-> |m = j - k>, so index 0 is
// |m = +j> and index 2j is |m = -j>. Energy-ladder labels a = 0..2j (a = 0 the
// ground level of h S^z with h > 0, i.e. m = a - j) therefore sit at index
// 2j - a. Multi-site states use the Kronecker order site 0 (left) to site N-1.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qfridge {

using complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;

/// Stores 2j so half-integer spins stay exact.
class SpinQuantumNumber {
public:
    explicit SpinQuantumNumber(int twice_j);

    /// Accepts j as a multiple of 1/2 (e.g. 0.5, 1, 1.5).
    static SpinQuantumNumber from_value(double j);

    int twice_j() const noexcept { return twice_j_; }
    double value() const noexcept { return 0.5 * twice_j_; }
    int dim() const noexcept { return twice_j_ + 1; }

    friend bool operator==(SpinQuantumNumber, SpinQuantumNumber) = default;

private:
    int twice_j_;
};

struct SpinOperators {
    Operator sx;
    Operator sy;
    Operator sz;
    Operator splus;
    Operator sminus;
};

SpinOperators spin_operators(SpinQuantumNumber j);

Operator kron(const Operator& a, const Operator& b);

/// Kronecker product of `op` at `site` with identities on every other site.
Operator embed_at_site(const Operator& op, std::size_t site, std::span<const int> dims);

int total_dim(std::span<const int> dims);

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
public:
    static constexpr double kHermiticityTol = 1e-12;
    static constexpr double kTraceTol = 1e-12;
    static constexpr double kMinEigenvalue = -1e-10;

    /// Validates all three invariants; throws std::invalid_argument otherwise.
    explicit DensityMatrix(Operator m);

    const Operator& matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }

private:
    Operator m_;
};

/// Reduced state on `keep`, tracing out every other site.
DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep, std::span<const int> dims);
Operator partial_trace(const Operator& rho, std::size_t keep, std::span<const int> dims);

struct HermitianSpectrum {
    Eigen::VectorXd values;  // ascending
    Operator vectors;        // columns orthonormal
};

HermitianSpectrum hermitian_spectrum(const Operator& a, double tol = 1e-10);

/// Eigenvalues of a Hermitian matrix, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Operator& a, double tol = 1e-10);

Operator hermitian_exp(const Operator& a);

/// Eigenvalues below kLogFloor are clamped to it before taking the log.
Operator hermitian_log(const Operator& a);
inline constexpr double kLogFloor = 1e-15;

/// Principal square root; negative eigenvalues (from rounding) are clamped to zero.
Operator hermitian_sqrt(const Operator& a);

double hermiticity_residual(const Operator& a);
Operator hermitize(const Operator& a);

} // namespace qfridge
