// baths.cpp — Thermal states and jump operators for local and global master equations

#include "qfridge/baths.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qfridge {

void BathSpec::validate(std::size_t n_sites) const
{
    if (temperatures.size() != n_sites) {
        throw std::invalid_argument("bath spec has " + std::to_string(temperatures.size()) +
                                    " temperatures for " + std::to_string(n_sites) + " sites");
    }
    for (double t : temperatures) {
        if (!(t > 0.0)) throw std::invalid_argument("bath temperatures must be positive");
    }
    if (const auto* flat = std::get_if<FlatCoupling>(&coupling)) {
        if (!(flat->rate > 0.0)) throw std::invalid_argument("flat coupling rate must be positive");
    } else {
        const auto& ohmic = std::get<OhmicCoupling>(coupling);
        if (ohmic.alpha.size() != n_sites) {
            throw std::invalid_argument("Ohmic coupling needs one alpha per site");
        }
        for (double a : ohmic.alpha) {
            if (!(a > 0.0)) throw std::invalid_argument("Ohmic coupling strengths must be positive");
        }
        if (!(ohmic.cutoff > 0.0)) throw std::invalid_argument("Ohmic cutoff must be positive");
    }
}

std::vector<std::string> BathSpec::warnings() const
{
    std::vector<std::string> out;
    if (const auto* ohmic = std::get_if<OhmicCoupling>(&coupling)) {
        for (std::size_t r = 0; r < ohmic->alpha.size(); ++r) {
            if (ohmic->alpha[r] > 0.05) {
                std::ostringstream os;
                os << "bath " << r + 1 << ": alpha = " << ohmic->alpha[r]
                   << " is outside the weak-coupling (Markovian) regime";
                out.push_back(os.str());
            }
        }
    }
    return out;
}

double BathSpec::max_temperature() const
{
    return temperatures.empty() ? 0.0 : *std::max_element(temperatures.begin(), temperatures.end());
}

DensityMatrix thermal_state(SpinQuantumNumber j, double field, double temperature)
{
    if (!(temperature > 0.0)) throw std::invalid_argument("thermal_state: temperature must be positive");
    const int d = j.dim();
    Eigen::VectorXd exponent(d);
    for (int k = 0; k < d; ++k) exponent(k) = -field * (j.value() - k) / temperature;
    const double shift = exponent.maxCoeff();
    Eigen::VectorXd pop = (exponent.array() - shift).exp();
    pop /= pop.sum();
    return DensityMatrix(pop.cast<complex>().asDiagonal().toDenseMatrix());
}

DensityMatrix initial_product_state(const SystemSpec& spec, const BathSpec& baths)
{
    if (baths.temperatures.size() != spec.sites.size()) {
        throw std::invalid_argument("initial_product_state: need one bath per site");
    }
    Operator rho = Operator::Identity(1, 1);
    for (std::size_t r = 0; r < spec.sites.size(); ++r) {
        rho = kron(rho, thermal_state(spec.sites[r].spin, spec.sites[r].field, baths.temperatures[r]).matrix());
    }
    return DensityMatrix(hermitize(rho / rho.trace().real()));
}

double bose_occupation(double omega, double temperature)
{
    if (!(omega > 0.0)) throw std::invalid_argument("bose_occupation: omega must be positive");
    if (!(temperature > 0.0)) throw std::invalid_argument("bose_occupation: temperature must be positive");
    return 1.0 / std::expm1(omega / temperature);
}

double transition_rate(double omega, const BathSpec& baths, std::size_t site)
{
    if (omega == 0.0) throw std::invalid_argument("transition_rate: zero frequency");
    if (site >= baths.temperatures.size()) throw std::invalid_argument("transition_rate: site out of range");
    const double w = std::abs(omega);
    const double kappa = bose_occupation(w, baths.temperatures[site]);
    const double thermal = omega > 0.0 ? 1.0 + kappa : kappa;
    if (const auto* flat = std::get_if<FlatCoupling>(&baths.coupling)) return flat->rate * thermal;
    const auto& ohmic = std::get<OhmicCoupling>(baths.coupling);
    if (site >= ohmic.alpha.size()) throw std::invalid_argument("transition_rate: missing Ohmic alpha");
    return ohmic.alpha[site] * w * std::exp(-w / ohmic.cutoff) * thermal;
}

DissipatorSet local_lindblad_set(const SystemSpec& spec, const BathSpec& baths)
{
    spec.validate();
    baths.validate(spec.sites.size());
    const std::vector<int> dims = spec.dims();
    DissipatorSet set;
    set.mode = QmeMode::Local;
    set.baths.resize(spec.sites.size());
    for (std::size_t r = 0; r < spec.sites.size(); ++r) {
        const double h = spec.sites[r].field;
        if (!(h > 0.0)) {
            throw std::invalid_argument("local master equation requires positive fields (site " +
                                        std::to_string(r + 1) + ")");
        }
        const SpinOperators s = spin_operators(spec.sites[r].spin);
        set.baths[r].push_back({0.5 * embed_at_site(s.sminus, r, dims), transition_rate(h, baths, r), h});
        set.baths[r].push_back({0.5 * embed_at_site(s.splus, r, dims), transition_rate(-h, baths, r), -h});
    }
    return set;
}

std::vector<BohrComponent> bohr_decomposition(const Operator& hamiltonian, const Operator& coupling_op)
{
    const HermitianSpectrum sp = hermitian_spectrum(hamiltonian);
    const Eigen::Index d = sp.values.size();
    const Operator x = sp.vectors.adjoint() * coupling_op * sp.vectors;
    // Blocks made only of rounding noise (e.g. from rotated degenerate eigenvectors) are dropped.
    const double noise = 1e-13 * std::max(1.0, x.cwiseAbs().maxCoeff());

    struct Pair {
        double gap;
        Eigen::Index p, q;
    };
    // A(w) = sum_{e_q - e_p = w} |p><p| X |q><q|
    std::vector<Pair> pairs;
    pairs.reserve(static_cast<std::size_t>(d * d));
    for (Eigen::Index p = 0; p < d; ++p) {
        for (Eigen::Index q = 0; q < d; ++q) pairs.push_back({sp.values(q) - sp.values(p), p, q});
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.gap < b.gap; });

    auto tol = [](double w) { return kGapTolerance * std::max(1.0, std::abs(w)); };

    std::vector<BohrComponent> out;
    std::size_t start = 0;
    while (start < pairs.size()) {
        std::size_t end = start + 1;
        while (end < pairs.size() && pairs[end].gap - pairs[end - 1].gap <= tol(pairs[end].gap)) ++end;
        const double lo = pairs[start].gap;
        const double hi = pairs[end - 1].gap;
        if (hi - lo > tol(hi)) {
            std::ostringstream os;
            os << "Bohr-frequency grouping failed: gaps spanning [" << lo << ", " << hi
               << "] chain together beyond the grouping tolerance";
            throw std::runtime_error(os.str());
        }
        if (end < pairs.size()) {
            const double next = pairs[end].gap - hi;
            if (next <= 100.0 * tol(pairs[end].gap)) {
                std::ostringstream os;
                os << "Bohr-frequency grouping ambiguous: gaps " << hi << " and " << pairs[end].gap
                   << " straddle the grouping tolerance";
                throw std::runtime_error(os.str());
            }
        }
        Operator block_eig = Operator::Zero(d, d);
        double weight = 0.0;
        double mean = 0.0;
        for (std::size_t k = start; k < end; ++k) {
            block_eig(pairs[k].p, pairs[k].q) = x(pairs[k].p, pairs[k].q);
            weight += std::abs(x(pairs[k].p, pairs[k].q));
            mean += pairs[k].gap;
        }
        mean /= static_cast<double>(end - start);
        if (weight > noise) out.push_back({mean, sp.vectors * block_eig * sp.vectors.adjoint()});
        start = end;
    }
    return out;
}

DissipatorSet global_lindblad_set(const SystemSpec& spec, const BathSpec& baths, const Hamiltonian& hamiltonian)
{
    spec.validate();
    baths.validate(spec.sites.size());
    if (!std::holds_alternative<OhmicCoupling>(baths.coupling)) {
        throw std::invalid_argument("global master equation requires an Ohmic bath coupling");
    }
    const std::vector<int> dims = spec.dims();
    DissipatorSet set;
    set.mode = QmeMode::Global;
    set.baths.resize(spec.sites.size());
    for (std::size_t r = 0; r < spec.sites.size(); ++r) {
        const Operator sx = embed_at_site(spin_operators(spec.sites[r].spin).sx, r, dims);
        for (BohrComponent& c : bohr_decomposition(hamiltonian.system, sx)) {
            if (std::abs(c.frequency) <= kGapTolerance) continue;
            const double rate = transition_rate(c.frequency, baths, r);
            set.baths[r].push_back({std::move(c.block), rate, c.frequency});
        }
    }
    return set;
}

} // namespace qfridge
