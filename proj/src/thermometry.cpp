// thermometry.cpp — Local temperature estimators and entropy diagnostics

#include "qfridge/thermometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qfridge {

std::string_view to_string(DistanceMeasure m)
{
    switch (m) {
    case DistanceMeasure::TraceDistance: return "trace";
    case DistanceMeasure::RelativeEntropy: return "relent";
    case DistanceMeasure::FidelityBased: return "fidelity";
    }
    return "unknown";
}

DistanceMeasure parse_distance_measure(std::string_view name)
{
    if (name == "trace") return DistanceMeasure::TraceDistance;
    if (name == "relent") return DistanceMeasure::RelativeEntropy;
    if (name == "fidelity") return DistanceMeasure::FidelityBased;
    throw std::invalid_argument("unknown distance measure '" + std::string(name) + "' (expected trace, relent or fidelity)");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSupportTol = 1e-14;

double trace_distance_general(const Operator& a, const Operator& b)
{
    return 0.5 * hermitian_eigenvalues(a - b).cwiseAbs().sum();
}

double relative_entropy_general(const Operator& a, const Operator& b)
{
    const HermitianSpectrum sb = hermitian_spectrum(b);
    const Operator a_in_b = sb.vectors.adjoint() * a * sb.vectors;
    double cross = 0.0;  // Tr[a ln b]
    for (Eigen::Index k = 0; k < sb.values.size(); ++k) {
        const double weight = a_in_b(k, k).real();
        if (sb.values(k) < kLogFloor) {
            if (weight > kSupportTol) return kInf;
            continue;
        }
        cross += weight * std::log(sb.values(k));
    }
    double self = 0.0;  // Tr[a ln a]
    for (double lam : hermitian_eigenvalues(a)) {
        if (lam > kLogFloor) self += lam * std::log(lam);
    }
    return std::max(0.0, (self - cross) / std::numbers::ln2);
}

double infidelity_general(const Operator& a, const Operator& b)
{
    const Operator root = hermitian_sqrt(a);
    const Operator inner = hermitize(root * b * root);
    double tr = 0.0;
    for (double lam : hermitian_eigenvalues(inner)) tr += std::sqrt(std::max(lam, 0.0));
    return std::max(0.0, 1.0 - tr * tr);
}

// (1 + x) ln(1 + x) - x, accurate near x = 0.
double entropy_kernel(double x)
{
    if (std::abs(x) < 1e-3) {
        const double x2 = x * x;
        return x2 * (0.5 - x / 6.0 + x2 / 12.0 - x2 * x / 20.0);
    }
    return (1.0 + x) * std::log1p(x) - x;
}

// Diagonal-state versions written without catastrophic cancellation near a = b,
// so the minimizer can resolve the optimum well below sqrt(machine epsilon).
double trace_distance_diag(const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
    return 0.5 * (a - b).cwiseAbs().sum();
}

double relative_entropy_diag(const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
    // sum_i [a ln(a/b) - a + b], each term nonnegative
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (b(i) <= kLogFloor) {
            if (a(i) > kSupportTol) return kInf;
            continue;
        }
        if (a(i) <= 0.0) {
            s += b(i);
            continue;
        }
        s += b(i) * entropy_kernel((a(i) - b(i)) / b(i));
    }
    return s / std::numbers::ln2;
}

double infidelity_diag(const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
    // 1 - F = H^2 (2 - H^2) with H^2 = sum (sqrt a - sqrt b)^2 / 2
    double h2 = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double diff = std::sqrt(std::max(a(i), 0.0)) - std::sqrt(std::max(b(i), 0.0));
        h2 += 0.5 * diff * diff;
    }
    return h2 * (2.0 - h2);
}

bool is_diagonal(const Operator& m)
{
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            if (i != k && std::abs(m(i, k)) > 1e-12) return false;
        }
    }
    return true;
}

Eigen::VectorXd thermal_populations(SpinQuantumNumber j, double field, double temperature)
{
    const int d = j.dim();
    Eigen::VectorXd exponent(d);
    for (int k = 0; k < d; ++k) exponent(k) = -field * (j.value() - k) / temperature;
    Eigen::VectorXd pop = (exponent.array() - exponent.maxCoeff()).exp();
    return pop / pop.sum();
}

double diag_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b, DistanceMeasure m)
{
    switch (m) {
    case DistanceMeasure::TraceDistance: return trace_distance_diag(a, b);
    case DistanceMeasure::RelativeEntropy: return relative_entropy_diag(a, b);
    case DistanceMeasure::FidelityBased: return infidelity_diag(a, b);
    }
    return kInf;
}

double general_distance(const Operator& a, const Operator& b, DistanceMeasure m)
{
    switch (m) {
    case DistanceMeasure::TraceDistance: return trace_distance_general(a, b);
    case DistanceMeasure::RelativeEntropy: return relative_entropy_general(a, b);
    case DistanceMeasure::FidelityBased: return infidelity_general(a, b);
    }
    return kInf;
}

} // namespace

double distance(const DensityMatrix& a, const DensityMatrix& b, DistanceMeasure measure)
{
    if (a.dim() != b.dim()) throw std::invalid_argument("distance: dimension mismatch");
    return general_distance(a.matrix(), b.matrix(), measure);
}

LocalTemperatureResult dlt(const DensityMatrix& rho_r, SpinQuantumNumber j, double field, DistanceMeasure measure,
                           const TemperatureSearch& search)
{
    if (rho_r.dim() != j.dim()) throw std::invalid_argument("dlt: state dimension does not match the spin");
    if (!(field > 0.0)) throw std::invalid_argument("dlt: field must be positive");
    if (!(search.t_min > 0.0) || !(search.t_max > search.t_min) || search.scan_points < 3) {
        throw std::invalid_argument("dlt: invalid temperature search interval");
    }

    const bool diagonal = is_diagonal(rho_r.matrix());
    const Eigen::VectorXd pops = rho_r.matrix().diagonal().real();
    auto raw = [&](double t) {
        const Eigen::VectorXd thermal = thermal_populations(j, field, t);
        if (diagonal) return diag_distance(thermal, pops, measure);
        return general_distance(thermal.cast<complex>().asDiagonal().toDenseMatrix(), rho_r.matrix(), measure);
    };
    // sqrt makes the smooth measures V-shaped at a zero minimum without moving the argmin.
    auto objective = [&](double t) {
        const double v = raw(t);
        return measure == DistanceMeasure::TraceDistance ? v : std::sqrt(std::max(v, 0.0));
    };

    const int n = search.scan_points;
    const double log_lo = std::log(search.t_min);
    const double step = (std::log(search.t_max) - log_lo) / (n - 1);
    int best = 0;
    double best_value = kInf;
    for (int k = 0; k < n; ++k) {
        const double value = objective(std::exp(log_lo + step * k));
        if (value < best_value) {
            best_value = value;
            best = k;
        }
    }
    if (best == 0 || best == n - 1) {
        std::ostringstream os;
        os << "dlt: optimum at the edge of the search interval [" << search.t_min << ", " << search.t_max
           << "]; the state is colder or hotter than the bracket";
        throw std::runtime_error(os.str());
    }

    double lo = std::exp(log_lo + step * (best - 1));
    double hi = std::exp(log_lo + step * (best + 1));
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - ratio * (hi - lo);
    double x2 = lo + ratio * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    while (hi - lo > search.tolerance * 0.1) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = objective(x2);
        }
    }
    const double t = 0.5 * (lo + hi);
    return {t, raw(t), measure};
}

double plt_qubit(const DensityMatrix& rho_r, double field)
{
    if (rho_r.dim() != 2) throw std::invalid_argument("plt_qubit: state is not a qubit");
    if (std::abs(rho_r.matrix()(0, 1)) > 1e-12) throw std::invalid_argument("plt_qubit: state is not diagonal");
    const double excited = rho_r.matrix()(0, 0).real();  // m = +1/2
    if (!(excited < 0.5)) {
        throw std::domain_error("plt_qubit: excited population >= 1/2; no positive temperature");
    }
    if (!(excited > 0.0)) return 0.0;
    return field / std::log(1.0 / excited - 1.0);
}

double von_neumann_entropy(const DensityMatrix& rho)
{
    double s = 0.0;
    for (double lam : hermitian_eigenvalues(rho.matrix())) {
        if (lam > kLogFloor) s -= lam * std::log2(lam);
    }
    return s;
}

EntropyMetrics entropy_metrics(const DensityMatrix& rho_initial, const DensityMatrix& rho_steady)
{
    EntropyMetrics m;
    m.initial = von_neumann_entropy(rho_initial);
    m.steady = von_neumann_entropy(rho_steady);
    if (!(m.initial > 0.0)) {
        throw std::domain_error("entropy_metrics: initial state is pure; normalized entropy undefined");
    }
    m.normalized = m.steady / m.initial;
    return m;
}

double cooling_factor(double initial_temperature, double steady_temperature)
{
    if (!(initial_temperature > 0.0)) throw std::invalid_argument("cooling_factor: initial temperature must be positive");
    return (initial_temperature - steady_temperature) / initial_temperature;
}

} // namespace qfridge
