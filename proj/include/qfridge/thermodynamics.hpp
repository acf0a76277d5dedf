// thermodynamics.hpp — Steady-state heat currents, work rate and entropy production

#pragma once

#include <vector>

#include "qfridge/dynamics.hpp"

namespace qfridge {

/// Which Hamiltonian measures the energy exchanged with bath r:
/// Local uses h_r S^z_r, Global uses the full H_sys.
enum class HeatConvention { Local, Global };

double heat_current(const Operator& steady, const Hamiltonian& hamiltonian, const DissipatorSet& dissipators,
                    std::size_t bath, HeatConvention convention);

/// Tr[(sum_r L_r(rho)) H_int].
double work_rate(const Operator& steady, const Operator& h_int, const DissipatorSet& dissipators);

struct EntropyProduction {
    double entropy_rate = 0.0;  // -sum_r Tr[L_r(rho) ln rho], natural log
    double production = 0.0;    // entropy_rate - sum_r Q_r / T_r
    bool rank_deficient = false;
};

EntropyProduction entropy_production_rate(const Operator& steady, const DissipatorSet& dissipators,
                                          const std::vector<double>& heat_currents,
                                          const std::vector<double>& bath_temperatures);

struct ValidityFlags {
    bool q1_positive = false;
    bool q2_negative = false;
    bool w_positive = false;
    bool sigma_nonneg = false;
    bool equilibrium = false;  // every current and rate vanishes (stationary initial state)

    bool all() const { return q1_positive && q2_negative && w_positive && sigma_nonneg; }
};

struct ThermoReport {
    std::vector<double> heat_currents;
    double work = 0.0;
    double entropy_rate = 0.0;
    double entropy_production = 0.0;
    bool rank_deficient = false;
    HeatConvention convention = HeatConvention::Local;
    ValidityFlags flags;
};

/// Tolerance below which a current counts as zero for the validity flags.
inline constexpr double kCurrentZeroTol = 1e-12;
/// Second-law floor: Sigma >= -kEntropyProductionFloor counts as nonnegative.
inline constexpr double kEntropyProductionFloor = 1e-9;

ThermoReport thermo_report(const Operator& steady, const Hamiltonian& hamiltonian, const DissipatorSet& dissipators,
                           const std::vector<double>& bath_temperatures, HeatConvention convention);

ValidityFlags validity_check(const ThermoReport& report);

} // namespace qfridge
