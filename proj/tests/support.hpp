// support.hpp — Small builders shared by the unit tests

#pragma once

#include <random>
#include <vector>

#include "qfridge/thermodynamics.hpp"
#include "qfridge/thermometry.hpp"

namespace qfridge::testing {

inline SystemSpec make_system(std::vector<double> spins, std::vector<double> fields, Interaction interaction,
                              Boundary boundary = Boundary::Periodic)
{
    SystemSpec s;
    for (std::size_t r = 0; r < spins.size(); ++r) {
        s.sites.push_back({SpinQuantumNumber::from_value(spins[r]), fields[r]});
    }
    s.interaction = interaction;
    s.boundary = boundary;
    return s;
}

inline BathSpec flat_baths(std::vector<double> temperatures, double rate = 0.05)
{
    return {std::move(temperatures), FlatCoupling{rate}};
}

inline BathSpec ohmic_baths(std::vector<double> temperatures, double alpha = 1e-3, double cutoff = 1e3)
{
    const std::size_t n = temperatures.size();
    return {std::move(temperatures), OhmicCoupling{std::vector<double>(n, alpha), cutoff}};
}

inline Operator random_hermitian(int d, std::mt19937& rng)
{
    std::normal_distribution<double> g;
    Operator m(d, d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) m(i, k) = complex(g(rng), g(rng));
    return 0.5 * (m + m.adjoint());
}

inline Operator random_density(int d, std::mt19937& rng)
{
    std::normal_distribution<double> g;
    Operator m(d, d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) m(i, k) = complex(g(rng), g(rng));
    Operator rho = m * m.adjoint();
    rho /= rho.trace();
    return 0.5 * (rho + rho.adjoint());
}

inline double frobenius(const Operator& m) { return m.norm(); }

} // namespace qfridge::testing
