// thermodynamics.cpp — Energy and entropy bookkeeping at the steady state

#include "qfridge/thermodynamics.hpp"

#include <cmath>
#include <sstream>

namespace qfridge {

namespace {

constexpr double kImaginaryTol = 1e-8;

double real_trace(const Operator& m, const char* what)
{
    const complex t = m.trace();
    if (std::abs(t.imag()) > kImaginaryTol * std::max(1.0, std::abs(t.real()))) {
        std::ostringstream os;
        os << what << ": imaginary part " << t.imag() << " signals inconsistent inputs";
        throw std::runtime_error(os.str());
    }
    return t.real();
}

} // namespace

double heat_current(const Operator& steady, const Hamiltonian& hamiltonian, const DissipatorSet& dissipators,
                    std::size_t bath, HeatConvention convention)
{
    if (bath >= dissipators.baths.size()) throw std::invalid_argument("heat_current: bath index out of range");
    const Operator action = dissipator_action(steady, dissipators.baths[bath]);
    const Operator& energy =
        convention == HeatConvention::Global ? hamiltonian.system : hamiltonian.local_terms.at(bath);
    return real_trace(energy * action, "heat_current");
}

double work_rate(const Operator& steady, const Operator& h_int, const DissipatorSet& dissipators)
{
    Operator total = Operator::Zero(steady.rows(), steady.cols());
    for (const auto& bath : dissipators.baths) total += dissipator_action(steady, bath);
    return real_trace(total * h_int, "work_rate");
}

EntropyProduction entropy_production_rate(const Operator& steady, const DissipatorSet& dissipators,
                                          const std::vector<double>& heat_currents,
                                          const std::vector<double>& bath_temperatures)
{
    if (heat_currents.size() != dissipators.baths.size() || bath_temperatures.size() != dissipators.baths.size()) {
        throw std::invalid_argument("entropy_production_rate: one heat current and temperature per bath required");
    }
    EntropyProduction out;
    const HermitianSpectrum sp = hermitian_spectrum(steady);
    out.rank_deficient = sp.values.minCoeff() < kLogFloor;
    const Operator log_rho = hermitian_log(steady);
    for (std::size_t r = 0; r < dissipators.baths.size(); ++r) {
        out.entropy_rate -= real_trace(dissipator_action(steady, dissipators.baths[r]) * log_rho, "entropy_rate");
    }
    out.production = out.entropy_rate;
    for (std::size_t r = 0; r < heat_currents.size(); ++r) out.production -= heat_currents[r] / bath_temperatures[r];
    return out;
}

ValidityFlags validity_check(const ThermoReport& report)
{
    ValidityFlags f;
    const auto& q = report.heat_currents;
    f.q1_positive = !q.empty() && q[0] > kCurrentZeroTol;
    f.q2_negative = q.size() > 1 && q[1] < -kCurrentZeroTol;
    f.w_positive = report.work > kCurrentZeroTol;
    f.sigma_nonneg = report.entropy_production >= -kEntropyProductionFloor;
    bool all_zero = std::abs(report.work) <= kCurrentZeroTol;
    for (double x : q) all_zero = all_zero && std::abs(x) <= kCurrentZeroTol;
    f.equilibrium = all_zero && std::abs(report.entropy_production) <= kEntropyProductionFloor;
    return f;
}

ThermoReport thermo_report(const Operator& steady, const Hamiltonian& hamiltonian, const DissipatorSet& dissipators,
                           const std::vector<double>& bath_temperatures, HeatConvention convention)
{
    ThermoReport report;
    report.convention = convention;
    for (std::size_t r = 0; r < dissipators.baths.size(); ++r) {
        report.heat_currents.push_back(heat_current(steady, hamiltonian, dissipators, r, convention));
    }
    report.work = work_rate(steady, hamiltonian.interaction, dissipators);
    const EntropyProduction ep =
        entropy_production_rate(steady, dissipators, report.heat_currents, bath_temperatures);
    report.entropy_rate = ep.entropy_rate;
    report.entropy_production = ep.production;
    report.rank_deficient = ep.rank_deficient;
    report.flags = validity_check(report);
    return report;
}

} // namespace qfridge
