#include <doctest.h>

#include "support.hpp"

using namespace qfridge;
using namespace qfridge::testing;

TEST_CASE("spin quantum numbers")
{
    CHECK(SpinQuantumNumber::from_value(0.5).dim() == 2);
    CHECK(SpinQuantumNumber::from_value(4).dim() == 9);
    CHECK(SpinQuantumNumber(3).value() == doctest::Approx(1.5));
    CHECK_THROWS_AS(SpinQuantumNumber(0), std::invalid_argument);
    CHECK_THROWS_AS(SpinQuantumNumber::from_value(0.3), std::invalid_argument);
    CHECK_THROWS_AS(SpinQuantumNumber::from_value(-1), std::invalid_argument);
}

TEST_CASE("angular momentum algebra for j up to 4")
{
    for (int tj = 1; tj <= 8; ++tj) {
        const SpinQuantumNumber j(tj);
        const SpinOperators s = spin_operators(j);
        const complex i(0, 1);
        CAPTURE(tj);
        CHECK(frobenius(s.sx * s.sy - s.sy * s.sx - i * s.sz) < 1e-12);
        CHECK(frobenius(s.sy * s.sz - s.sz * s.sy - i * s.sx) < 1e-12);
        CHECK(frobenius(s.sz * s.sx - s.sx * s.sz - i * s.sy) < 1e-12);
        const Operator casimir = s.sx * s.sx + s.sy * s.sy + s.sz * s.sz;
        const double jj = j.value() * (j.value() + 1);
        CHECK(frobenius(casimir - jj * Operator::Identity(j.dim(), j.dim())) < 1e-11);
        CHECK(s.sz(0, 0).real() == doctest::Approx(j.value()));
        CHECK(frobenius(s.splus.adjoint() - s.sminus) < 1e-15);
    }
}

TEST_CASE("spin-1/2 operators are half the Pauli matrices")
{
    const SpinOperators s = spin_operators(SpinQuantumNumber(1));
    CHECK(s.sx(0, 1).real() == doctest::Approx(0.5));
    CHECK(s.sy(0, 1).imag() == doctest::Approx(-0.5));
    CHECK(s.sz(1, 1).real() == doctest::Approx(-0.5));
    CHECK(s.splus(0, 1).real() == doctest::Approx(1.0));
}

TEST_CASE("embedding and partial trace")
{
    std::mt19937 rng(11);
    const std::vector<int> dims = {2, 3, 2};
    const Operator a = random_density(2, rng), b = random_density(3, rng), c = random_density(2, rng);
    const DensityMatrix rho(kron(kron(a, b), c));
    CHECK(frobenius(partial_trace(rho, 0, dims).matrix() - a) < 1e-13);
    CHECK(frobenius(partial_trace(rho, 1, dims).matrix() - b) < 1e-13);
    CHECK(frobenius(partial_trace(rho, 2, dims).matrix() - c) < 1e-13);

    const Operator sz = spin_operators(SpinQuantumNumber(2)).sz;
    const Operator embedded = embed_at_site(sz, 1, dims);
    CHECK(embedded.rows() == 12);
    CHECK(frobenius(embedded - kron(kron(Operator::Identity(2, 2), sz), Operator::Identity(2, 2))) < 1e-15);
    CHECK(total_dim(dims) == 12);
    CHECK_THROWS_AS(embed_at_site(sz, 0, dims), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(rho, 3, dims), std::invalid_argument);
}

TEST_CASE("density matrix validation")
{
    Operator m = Operator::Identity(2, 2) * 0.5;
    CHECK_NOTHROW(DensityMatrix{m});
    Operator not_normalized = Operator::Identity(2, 2);
    CHECK_THROWS_AS(DensityMatrix{not_normalized}, std::invalid_argument);
    Operator negative = Operator::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix{negative}, std::invalid_argument);
    Operator skew = m;
    skew(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityMatrix{skew}, std::invalid_argument);
}

TEST_CASE("Hermitian matrix functions")
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Operator rho = random_density(4, rng);
        CHECK(frobenius(hermitian_exp(hermitian_log(rho)) - rho) < 1e-10);
        const Operator root = hermitian_sqrt(rho);
        CHECK(frobenius(root * root - rho) < 1e-12);
    }
    Operator diag = Operator::Zero(2, 2);
    diag(0, 0) = 1.0;
    const Operator lg = hermitian_log(diag);
    CHECK(lg(1, 1).real() == doctest::Approx(std::log(kLogFloor)));
    Operator bad = Operator::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_spectrum(bad), std::invalid_argument);
    CHECK(hermiticity_residual(hermitize(bad)) < 1e-16);
}
