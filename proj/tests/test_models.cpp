#include <doctest.h>

#include <numbers>

#include "support.hpp"

using namespace qfridge;
using namespace qfridge::testing;

TEST_CASE("local Hamiltonian is diagonal with the Zeeman ladder")
{
    const SystemSpec s = make_system({1, 0.5}, {1.1, 1.3}, XyzInteraction{0.0});
    const auto [h, terms] = build_h_loc(s);
    CHECK(h.rows() == 6);
    CHECK(terms.size() == 2);
    // index 0 is m = (+1, +1/2)
    CHECK(h(0, 0).real() == doctest::Approx(1.1 + 0.65));
    CHECK(h(5, 5).real() == doctest::Approx(-1.1 - 0.65));
    CHECK(frobenius(h - terms[0] - terms[1]) < 1e-15);
}

TEST_CASE("XX dimer spectrum")
{
    // J (SxSx + SySy) on two spin-1/2 has eigenvalues -J/2, 0, 0, +J/2
    const SystemSpec s = make_system({0.5, 0.5}, {0, 0}, XyzInteraction{0.2});
    const Eigen::VectorXd e = hermitian_eigenvalues(build_h_xyz(s));
    CHECK(e(0) == doctest::Approx(-0.1));
    CHECK(e(1) == doctest::Approx(0.0));
    CHECK(e(2) == doctest::Approx(0.0));
    CHECK(e(3) == doctest::Approx(0.1));
}

TEST_CASE("anisotropic XYZ matches its Pauli form on two qubits")
{
    const double J = 0.3, g = 0.4, d = -0.7;
    const SystemSpec s = make_system({0.5, 0.5}, {0, 0}, XyzInteraction{J, g, d});
    const Operator h = build_h_xyz(s);
    const SpinOperators o = spin_operators(SpinQuantumNumber(1));
    const Operator expect = J * ((1 + g) * kron(o.sx, o.sx) + (1 - g) * kron(o.sy, o.sy) + d * kron(o.sz, o.sz));
    CHECK(frobenius(h - expect) < 1e-15);
}

TEST_CASE("bonds: two sites share one bond, periodic rings close")
{
    CHECK(make_system({1, 1}, {1, 1}, XyzInteraction{1}).bonds().size() == 1);
    CHECK(make_system({1, 1}, {1, 1}, XyzInteraction{1}, Boundary::Open).bonds().size() == 1);
    const auto ring = make_system({1, 1, 1}, {1, 1, 1}, XyzInteraction{1}).bonds();
    REQUIRE(ring.size() == 3);
    CHECK(ring[2] == std::pair<std::size_t, std::size_t>{2, 0});
    CHECK(make_system({1, 1, 1}, {1, 1, 1}, XyzInteraction{1}, Boundary::Open).bonds().size() == 2);
}

TEST_CASE("XX and XXZ conserve total magnetization")
{
    for (double j : {0.5, 1.0, 1.5}) {
        const SystemSpec s = make_system({j, j, j}, {1.5, 2.5, 3.5}, XyzInteraction{0.07, 0.0, -3.0});
        const Operator h = build_hamiltonian(s).system;
        const Operator sz = total_spin(s).sz;
        CHECK(frobenius(h * sz - sz * h) < 1e-12);
    }
}

TEST_CASE("bilinear-biquadratic interaction")
{
    CHECK_THROWS_AS(build_h_bb(make_system({0.5, 0.5}, {1, 1}, BilinearBiquadraticInteraction{1, 0})),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_system({0.5, 0.5}, {1, 1}, BilinearBiquadraticInteraction{1, 0}).validate(),
                    std::invalid_argument);
    // phi = 0 is the Heisenberg bond; for two spin-1 it has levels -2, -1, +1 (J = 1)
    const SystemSpec s = make_system({1, 1}, {0, 0}, BilinearBiquadraticInteraction{1.0, 0.0});
    const Eigen::VectorXd e = hermitian_eigenvalues(build_h_bb(s));
    CHECK(e(0) == doctest::Approx(-2.0));
    CHECK(e(1) == doctest::Approx(-1.0));
    CHECK(e(8) == doctest::Approx(1.0));
    // pure biquadratic on two spin-1: (S.S)^2 has levels 4 (singlet), 1 (triplet), 1 (quintet)
    const SystemSpec q = make_system({1, 1}, {0, 0}, BilinearBiquadraticInteraction{1.0, std::numbers::pi / 2});
    const Eigen::VectorXd eq = hermitian_eigenvalues(build_h_bb(q));
    CHECK(eq(0) == doctest::Approx(1.0));
    CHECK(eq(8) == doctest::Approx(4.0));
    // SU(2) invariance
    const SystemSpec three = make_system({1.5, 1.5, 1.5}, {0, 0, 0}, BilinearBiquadraticInteraction{0.3, 1.0});
    const Operator h = build_h_bb(three);
    const TotalSpin t = total_spin(three);
    CHECK(frobenius(h * t.sx - t.sx * h) < 1e-11);
    CHECK(frobenius(h * t.sz - t.sz * h) < 1e-11);
}

TEST_CASE("mixed spin-1/2 plus spin-j XX coupling")
{
    const SystemSpec s = make_system({0.5, 2}, {1.1, 1.3}, MixedXxInteraction{0.09});
    const Operator h = build_h_mixed_xx(s);
    CHECK(h.rows() == 10);
    CHECK(hermiticity_residual(h) < 1e-15);
    const SystemSpec as_xyz = make_system({0.5, 2}, {1.1, 1.3}, XyzInteraction{0.09});
    CHECK(frobenius(h - build_h_xyz(as_xyz)) < 1e-14);
    CHECK_THROWS_AS(make_system({1, 2}, {1, 1}, MixedXxInteraction{0.1}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_system({0.5, 2, 1}, {1, 1, 1}, MixedXxInteraction{0.1}).validate(), std::invalid_argument);
}

TEST_CASE("system validation")
{
    CHECK_THROWS_AS(make_system({1}, {1}, XyzInteraction{1}).validate(), std::invalid_argument);
    CHECK_NOTHROW(make_system({4, 4}, {1.1, 1.3}, XyzInteraction{0.09}).validate());
    const Hamiltonian h = build_hamiltonian(make_system({1, 1}, {1.1, 1.3}, XyzInteraction{0.09}));
    CHECK(frobenius(h.system - h.local - h.interaction) < 1e-15);
    CHECK(h.local_terms.size() == 2);
}
