#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace qfridge;
using namespace qfridge::testing;

TEST_CASE("Bose occupation")
{
    CHECK(bose_occupation(1.1, 1.0) == doctest::Approx(1.0 / (std::exp(1.1) - 1.0)).epsilon(1e-14));
    CHECK(bose_occupation(1e-8, 1.0) == doctest::Approx(1e8).epsilon(1e-7));
    CHECK(bose_occupation(50.0, 0.01) == 0.0);
    CHECK_THROWS_AS(bose_occupation(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(bose_occupation(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("transition rates obey detailed balance")
{
    const BathSpec flat = flat_baths({1.0, 1.1});
    const double up = transition_rate(-1.3, flat, 1);
    const double down = transition_rate(1.3, flat, 1);
    CHECK(down / up == doctest::Approx(std::exp(1.3 / 1.1)));
    CHECK(down == doctest::Approx(0.05 * (1 + bose_occupation(1.3, 1.1))));

    const BathSpec ohmic = ohmic_baths({1.0, 1.1});
    const double w = 0.7;
    const double f = 1e-3 * w * std::exp(-w / 1e3);
    CHECK(transition_rate(w, ohmic, 0) == doctest::Approx(f * (1 + bose_occupation(w, 1.0))));
    CHECK(transition_rate(-w, ohmic, 0) == doctest::Approx(f * bose_occupation(w, 1.0)));
    CHECK_THROWS_AS(transition_rate(0.0, ohmic, 0), std::invalid_argument);
}

TEST_CASE("thermal states")
{
    const DensityMatrix t = thermal_state(SpinQuantumNumber(1), 1.1, 1.0);
    // index 0 is m = +1/2, the excited level
    CHECK(t.matrix()(0, 0).real() == doctest::Approx(1.0 / (1.0 + std::exp(1.1))));
    const DensityMatrix cold = thermal_state(SpinQuantumNumber(8), 2.0, 1e-3);
    CHECK(cold.matrix()(8, 8).real() == doctest::Approx(1.0));
    const DensityMatrix hot = thermal_state(SpinQuantumNumber(2), 1.0, 1e9);
    CHECK(hot.matrix()(1, 1).real() == doctest::Approx(1.0 / 3.0));

    const SystemSpec s = make_system({0.5, 1}, {1.1, 1.3}, XyzInteraction{0.09});
    const DensityMatrix rho = initial_product_state(s, flat_baths({1.0, 1.1}));
    CHECK(rho.dim() == 6);
    const std::vector<int> dims = s.dims();
    CHECK(frobenius(partial_trace(rho, 1, dims).matrix() - thermal_state(SpinQuantumNumber(2), 1.3, 1.1).matrix()) <
          1e-14);
}

TEST_CASE("bath validation")
{
    CHECK_THROWS_AS(flat_baths({1.0}).validate(2), std::invalid_argument);
    CHECK_THROWS_AS(flat_baths({1.0, -1.0}).validate(2), std::invalid_argument);
    CHECK_THROWS_AS(flat_baths({1.0, 1.0}, -0.1).validate(2), std::invalid_argument);
    CHECK(ohmic_baths({1.0, 1.0}, 0.1).warnings().size() == 2);  // one per bath
    CHECK(ohmic_baths({1.0, 1.0}, 1e-3).warnings().empty());
}

TEST_CASE("local jump operators")
{
    const SystemSpec s = make_system({1, 1}, {1.1, 1.3}, XyzInteraction{0.09});
    const DissipatorSet set = local_lindblad_set(s, flat_baths({1.0, 1.1}));
    REQUIRE(set.baths.size() == 2);
    REQUIRE(set.baths[0].size() == 2);
    const std::vector<int> dims = s.dims();
    const SpinOperators o = spin_operators(SpinQuantumNumber(2));
    CHECK(frobenius(set.baths[0][0].jump - 0.5 * embed_at_site(o.sminus, 0, dims)) < 1e-15);
    CHECK(set.baths[0][0].rate == doctest::Approx(0.05 * (1 + bose_occupation(1.1, 1.0))));
    CHECK(set.baths[0][1].rate == doctest::Approx(0.05 * bose_occupation(1.1, 1.0)));
    CHECK(set.baths[1][0].frequency == doctest::Approx(1.3));
    // S^- lowers the local energy by exactly h_r: [h S^z, A] = -h A
    const Operator hz = 1.1 * embed_at_site(o.sz, 0, dims);
    const Operator& a = set.baths[0][0].jump;
    CHECK(frobenius(hz * a - a * hz + 1.1 * a) < 1e-14);

    const SystemSpec bad = make_system({1, 1}, {-1.0, 1.3}, XyzInteraction{0.09});
    CHECK_THROWS_AS(local_lindblad_set(bad, flat_baths({1.0, 1.1})), std::invalid_argument);
}

TEST_CASE("Bohr decomposition: eigenoperators that sum to the coupling")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 25; ++trial) {
        const Operator h = random_hermitian(6, rng);
        const Operator x = random_hermitian(6, rng);
        const auto parts = bohr_decomposition(h, x);
        Operator sum = Operator::Zero(6, 6);
        for (const auto& p : parts) {
            sum += p.block;
            CHECK(frobenius(h * p.block - p.block * h + p.frequency * p.block) < 1e-10);
        }
        CHECK(frobenius(sum - x) < 1e-12);
    }
}

TEST_CASE("degenerate gaps share one jump operator")
{
    // Non-interacting pair with equal fields: every S^x_1 gap equals h
    const SystemSpec s = make_system({1, 1}, {1.2, 1.2}, XyzInteraction{0.0});
    const Hamiltonian h = build_hamiltonian(s);
    const Operator x = embed_at_site(spin_operators(SpinQuantumNumber(2)).sx, 0, s.dims());
    const auto parts = bohr_decomposition(h.system, x);
    REQUIRE(parts.size() == 2);
    CHECK(std::abs(parts[0].frequency) == doctest::Approx(1.2));
    CHECK(std::abs(parts[1].frequency) == doctest::Approx(1.2));
}

TEST_CASE("global jump operators")
{
    const SystemSpec s = make_system({1.5, 1.5}, {1.1, 1.3}, XyzInteraction{0.05, 0.0, -20.0});
    const Hamiltonian h = build_hamiltonian(s);
    const BathSpec baths = ohmic_baths({1.0, 1.1});
    const DissipatorSet set = global_lindblad_set(s, baths, h);
    REQUIRE(set.mode == QmeMode::Global);
    for (std::size_t r = 0; r < 2; ++r) {
        const Operator x = embed_at_site(spin_operators(SpinQuantumNumber(3)).sx, r, s.dims());
        Operator sum = Operator::Zero(x.rows(), x.cols());
        for (const auto& t : set.baths[r]) {
            sum += t.jump;
            CHECK(t.frequency != 0.0);
            CHECK(t.rate == doctest::Approx(transition_rate(t.frequency, baths, r)));
        }
        // no zero-frequency block for this Hamiltonian, so the jumps reproduce S^x exactly
        CHECK(frobenius(sum - x) < 1e-10);
    }
    CHECK_THROWS_AS(global_lindblad_set(s, flat_baths({1.0, 1.1}), h), std::invalid_argument);
}
