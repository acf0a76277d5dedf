// baths.hpp — Thermal states, bath transition rates and Lindblad jump-operator sets
//
// Two coupling models are supported. Flat(Gamma) multiplies the thermal factors
// directly, gamma(+w) = Gamma (1 + kappa(w)) and gamma(-w) = Gamma kappa(w); it is
// the convention used with the local master equation. Ohmic uses the spectral
// density f(w) = alpha_r w exp(-w / w_c) in place of Gamma.

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qfridge/models.hpp"

namespace qfridge {

struct FlatCoupling {
    double rate = 0.05;
};

struct OhmicCoupling {
    std::vector<double> alpha;  // one per site
    double cutoff = 1e3;
};

using BathCoupling = std::variant<FlatCoupling, OhmicCoupling>;

struct BathSpec {
    std::vector<double> temperatures;  // T_r^0, one per site
    BathCoupling coupling = FlatCoupling{};

    void validate(std::size_t n_sites) const;

    /// Non-fatal notes, e.g. Ohmic strengths outside the Markovian regime (alpha > 0.05).
    std::vector<std::string> warnings() const;

    double max_temperature() const;
};

enum class QmeMode { Local, Global };

struct LindbladTerm {
    Operator jump;
    double rate = 0.0;
    double frequency = 0.0;  // energy removed from the system by one jump
};

struct DissipatorSet {
    QmeMode mode = QmeMode::Local;
    std::vector<std::vector<LindbladTerm>> baths;  // baths[r] acts through site r
};

DensityMatrix thermal_state(SpinQuantumNumber j, double field, double temperature);

/// Tensor product of the per-site thermal states at the bath temperatures.
DensityMatrix initial_product_state(const SystemSpec& spec, const BathSpec& baths);

/// 1 / (exp(omega / T) - 1); requires omega > 0.
double bose_occupation(double omega, double temperature);

/// Rate for a jump through signed gap `omega` into bath `site`.
double transition_rate(double omega, const BathSpec& baths, std::size_t site);

/// Per bath r: (S^-_r / 2, rate(+h_r)) and (S^+_r / 2, rate(-h_r)).
DissipatorSet local_lindblad_set(const SystemSpec& spec, const BathSpec& baths);

/// One projected block of S^x_r between eigenspaces of H_sys separated by `frequency`.
struct BohrComponent {
    double frequency;
    Operator block;
};

/// Splits the coupling operator `coupling_op` into eigen-operators of `hamiltonian`;
/// the blocks sum to `coupling_op`. Includes the zero-frequency block.
std::vector<BohrComponent> bohr_decomposition(const Operator& hamiltonian, const Operator& coupling_op);

/// Gap grouping: |w - w'| <= kGapTolerance * max(1, |w|).
inline constexpr double kGapTolerance = 1e-9;

/// Global-approach jump operators A_r(w) from S^x_r in the eigenbasis of H_sys.
/// Zero-frequency blocks are dropped (the Ohmic density vanishes there).
DissipatorSet global_lindblad_set(const SystemSpec& spec, const BathSpec& baths, const Hamiltonian& hamiltonian);

} // namespace qfridge
