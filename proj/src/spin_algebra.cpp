// spin_algebra.cpp — Spin-j operators, embeddings, partial trace, spectral functions

#include "qfridge/spin_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace qfridge {

SpinQuantumNumber::SpinQuantumNumber(int twice_j) : twice_j_(twice_j)
{
    if (twice_j < 1) {
        throw std::invalid_argument("spin quantum number must satisfy 2j >= 1, got 2j = " +
                                    std::to_string(twice_j));
    }
}

SpinQuantumNumber SpinQuantumNumber::from_value(double j)
{
    const double twice = 2.0 * j;
    const double rounded = std::round(twice);
    if (std::abs(twice - rounded) > 1e-9) {
        throw std::invalid_argument("spin quantum number must be a multiple of 1/2, got " +
                                    std::to_string(j));
    }
    return SpinQuantumNumber(static_cast<int>(rounded));
}

SpinOperators spin_operators(SpinQuantumNumber spin)
{
    const int d = spin.dim();
    const double j = spin.value();
    SpinOperators ops;
    ops.sz = Operator::Zero(d, d);
    ops.splus = Operator::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        const double m = j - k;
        ops.sz(k, k) = m;
        // S+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> sits at index k-1.
        if (k > 0) ops.splus(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    ops.sminus = ops.splus.adjoint();
    ops.sx = 0.5 * (ops.splus + ops.sminus);
    ops.sy = complex(0.0, -0.5) * (ops.splus - ops.sminus);
    return ops;
}

Operator kron(const Operator& a, const Operator& b)
{
    Operator out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
        }
    }
    return out;
}

int total_dim(std::span<const int> dims)
{
    int d = 1;
    for (int di : dims) {
        if (di < 1) throw std::invalid_argument("site dimensions must be positive");
        d *= di;
    }
    return d;
}

Operator embed_at_site(const Operator& op, std::size_t site, std::span<const int> dims)
{
    if (site >= dims.size()) {
        throw std::invalid_argument("embed_at_site: site index " + std::to_string(site) +
                                    " out of range for " + std::to_string(dims.size()) + " sites");
    }
    if (op.rows() != dims[site] || op.cols() != dims[site]) {
        throw std::invalid_argument("embed_at_site: operator dimension " + std::to_string(op.rows()) +
                                    " does not match site dimension " + std::to_string(dims[site]));
    }
    int before = 1;
    for (std::size_t s = 0; s < site; ++s) before *= dims[s];
    int after = 1;
    for (std::size_t s = site + 1; s < dims.size(); ++s) after *= dims[s];
    const Operator left = Operator::Identity(before, before);
    const Operator right = Operator::Identity(after, after);
    return kron(kron(left, op), right);
}

DensityMatrix::DensityMatrix(Operator m) : m_(std::move(m))
{
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw std::invalid_argument("density matrix must be square and non-empty");
    }
    const double herm = hermiticity_residual(m_);
    if (herm > kHermiticityTol) {
        throw std::invalid_argument("density matrix not Hermitian (residual " + std::to_string(herm) + ")");
    }
    const complex tr = m_.trace();
    if (std::abs(tr - 1.0) > kTraceTol) {
        throw std::invalid_argument("density matrix trace deviates from 1 by " +
                                    std::to_string(std::abs(tr - 1.0)));
    }
    Eigen::SelfAdjointEigenSolver<Operator> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kMinEigenvalue) {
        throw std::invalid_argument("density matrix has negative eigenvalue " +
                                    std::to_string(es.eigenvalues().minCoeff()));
    }
}

Operator partial_trace(const Operator& rho, std::size_t keep, std::span<const int> dims)
{
    if (keep >= dims.size()) {
        throw std::invalid_argument("partial_trace: site index " + std::to_string(keep) + " out of range");
    }
    const int d = total_dim(dims);
    if (rho.rows() != d || rho.cols() != d) {
        throw std::invalid_argument("partial_trace: state dimension does not match site dimensions");
    }
    int before = 1;
    for (std::size_t s = 0; s < keep; ++s) before *= dims[s];
    const int dk = dims[keep];
    const int after = d / (before * dk);

    Operator out = Operator::Zero(dk, dk);
    for (int k = 0; k < dk; ++k) {
        for (int l = 0; l < dk; ++l) {
            complex acc = 0.0;
            for (int p = 0; p < before; ++p) {
                const int row_base = (p * dk + k) * after;
                const int col_base = (p * dk + l) * after;
                for (int q = 0; q < after; ++q) acc += rho(row_base + q, col_base + q);
            }
            out(k, l) = acc;
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep, std::span<const int> dims)
{
    return DensityMatrix(hermitize(partial_trace(rho.matrix(), keep, dims)));
}

double hermiticity_residual(const Operator& a)
{
    if (a.size() == 0) return 0.0;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

Operator hermitize(const Operator& a)
{
    return 0.5 * (a + a.adjoint());
}

HermitianSpectrum hermitian_spectrum(const Operator& a, double tol)
{
    if (a.rows() != a.cols()) throw std::invalid_argument("hermitian_spectrum: matrix not square");
    const double herm = hermiticity_residual(a);
    if (herm > tol) {
        throw std::invalid_argument("hermitian_spectrum: matrix not Hermitian (residual " +
                                    std::to_string(herm) + ")");
    }
    Eigen::SelfAdjointEigenSolver<Operator> es(hermitize(a));
    return {es.eigenvalues(), es.eigenvectors()};
}

Eigen::VectorXd hermitian_eigenvalues(const Operator& a, double tol)
{
    if (a.rows() != a.cols()) throw std::invalid_argument("hermitian_eigenvalues: matrix not square");
    const double herm = hermiticity_residual(a);
    if (herm > tol) {
        throw std::invalid_argument("hermitian_eigenvalues: matrix not Hermitian (residual " +
                                    std::to_string(herm) + ")");
    }
    Eigen::SelfAdjointEigenSolver<Operator> es(hermitize(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

namespace {

Operator apply_spectral(const Operator& a, const std::function<double(double)>& f)
{
    const HermitianSpectrum sp = hermitian_spectrum(a);
    Eigen::VectorXd fv = sp.values.unaryExpr(f);
    return sp.vectors * fv.cast<complex>().asDiagonal() * sp.vectors.adjoint();
}

} // namespace

Operator hermitian_exp(const Operator& a)
{
    return apply_spectral(a, [](double x) { return std::exp(x); });
}

Operator hermitian_log(const Operator& a)
{
    return apply_spectral(a, [](double x) { return std::log(std::max(x, kLogFloor)); });
}

Operator hermitian_sqrt(const Operator& a)
{
    return apply_spectral(a, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

} // namespace qfridge
