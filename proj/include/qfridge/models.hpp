// models.hpp — Local-field, XYZ, bilinear-biquadratic and mixed-spin XX Hamiltonians

#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "qfridge/spin_algebra.hpp"

namespace qfridge {

struct Site {
    SpinQuantumNumber spin;
    double field;  // h_r, coefficient of S^z_r
};

/// J[(1+gamma) SxSx + (1-gamma) SySy] + J*delta SzSz per bond.
struct XyzInteraction {
    double coupling = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
};

/// J cos(phi) S.S + J sin(phi) (S.S)^2 per bond; sites must have j >= 1.
struct BilinearBiquadraticInteraction {
    double coupling = 0.0;
    double phi = 0.0;
};

/// J[Sx Sx + Sy Sy] between a spin-1/2 (site 0) and an arbitrary spin (site 1).
struct MixedXxInteraction {
    double coupling = 0.0;
};

using Interaction = std::variant<XyzInteraction, BilinearBiquadraticInteraction, MixedXxInteraction>;

enum class Boundary { Open, Periodic };

struct SystemSpec {
    std::vector<Site> sites;
    Interaction interaction = XyzInteraction{};
    Boundary boundary = Boundary::Periodic;

    /// Throws std::invalid_argument on N < 2, spin-1/2 sites under BB, or a malformed mixed pair.
    void validate() const;

    std::vector<int> dims() const;

    /// Nearest-neighbour bonds. Two sites always share exactly one bond; periodic
    /// chains with N >= 3 close the ring with (N-1, 0).
    std::vector<std::pair<std::size_t, std::size_t>> bonds() const;

    double coupling() const;
};

struct Hamiltonian {
    Operator local;                    // sum_r h_r S^z_r
    Operator interaction;
    Operator system;                   // local + interaction
    std::vector<Operator> local_terms; // h_r S^z_r embedded, one per site
};

/// Sum of embedded h_r S^z_r. Second member holds the per-site terms.
std::pair<Operator, std::vector<Operator>> build_h_loc(const SystemSpec& spec);

Operator build_h_xyz(const SystemSpec& spec);
Operator build_h_bb(const SystemSpec& spec);
Operator build_h_mixed_xx(const SystemSpec& spec);

/// Validates `spec` and assembles all parts.
Hamiltonian build_hamiltonian(const SystemSpec& spec);

/// Embedded total S^nu = sum_r S^nu_r for nu in {x, y, z}.
struct TotalSpin {
    Operator sx, sy, sz;
};
TotalSpin total_spin(const SystemSpec& spec);

} // namespace qfridge
