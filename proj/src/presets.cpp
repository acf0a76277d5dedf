// presets.cpp — Embedded configurations for the reference experiments

#include "qfridge/presets.hpp"

#include <stdexcept>

namespace qfridge {

namespace {

// Shared two-spin local setup: h = (1.1, 1.3), T = (1.0, 1.1), flat Gamma = 0.05.
const char* const kTwoSpinLocal = R"(
[bath]
temperatures = 1.0, 1.1
coupling = flat
Gamma = 0.05

[qme]
mode = local

[evolution]
dt = 0.05
t_max = 2e5
convergence_tol = 1e-10
)";

const char* const kTwoSpinGlobal = R"(
[bath]
temperatures = 1.0, 1.1
coupling = ohmic
alpha = 1e-3
cutoff = 1e3

[qme]
mode = global
steady_state = nullspace

# used with --steady-state integrate; Ohmic rates are ~1e-3, so the residual bound is tight
[evolution]
dt = 0.05
t_max = 1e6
convergence_tol = 1e-12
)";

const char* const kThreeSpinLocal = R"(
[bath]
temperatures = 1.0, 1.1, 1.5
coupling = flat
Gamma = 0.05

[qme]
mode = local

[evolution]
dt = 0.05
t_max = 2e5
convergence_tol = 1e-10
)";

std::string bb_two_spin(const char* phi)
{
    return std::string(R"(
[system]
spins = 1, 1
fields = 1.1, 1.3
interaction = bb
J = 0.05
phi = )") + phi + R"(

[sweep]
axis1 = j: 1, 1.5, 2
axis2 = J: linspace(0.01, 0.1, 10)
)" + kTwoSpinLocal;
}

std::string scatter(const char* spin)
{
    return std::string(R"(
[system]
spins = )") + spin + ", " + spin + R"(
fields = 1.1, 1.1
interaction = xx
J = 0.05

[qme]
steady_state = nullspace

[bath]
temperatures = 1.0, 1.1
coupling = flat
Gamma = 0.05

[sweep]
axis1 = J: linspace(0.01, 0.1, 70)
axis2 = h2: linspace(1.1, 2.1, 100)
)";
}

std::string bb_three_spin(const char* phi)
{
    return std::string(R"(
[system]
spins = 1, 1, 1
fields = 1.5, 2.5, 3.5
interaction = bb
J = 0.05
phi = )") + phi + R"(

[qme]
heat_convention = global

[sweep]
axis1 = j: 1, 1.5, 2
axis2 = J: 0.02, 0.05, 0.09, 0.2, 0.3, 0.5, 0.8
)" + R"(
[bath]
temperatures = 1.0, 1.1, 1.5
coupling = flat
Gamma = 0.05

[evolution]
dt = 0.05
t_max = 2e5
convergence_tol = 1e-10
)";
}

std::vector<Preset> build()
{
    const std::string two_local = kTwoSpinLocal;
    const std::string two_global = kTwoSpinGlobal;
    const std::string three_local = kThreeSpinLocal;
    std::vector<Preset> p;

    p.push_back({"stationary", "Stationary point h1/T1 = h2/T2: two XX spin-1/2 and spin-1 pairs",
                 R"(
[meta]
name = stationary

[system]
spins = 1/2, 1/2
fields = 1.1, 1.43
interaction = xx
J = 0.09

[bath]
temperatures = 1.0, 1.3
coupling = flat
Gamma = 0.05

[sweep]
axis1 = j: 1/2, 1

[evolution]
dt = 0.05
t_max = 1e3
)"});

    p.push_back({"fig2", "Two identical XX spins, local QME: T1, Q1 and S_N versus j for three couplings",
                 R"(
[meta]
name = fig2

[system]
spins = 1/2, 1/2
fields = 1.1, 1.3
interaction = xx
J = 0.09

[sweep]
axis1 = J: 0.02, 0.05, 0.09
axis2 = j: linspace(0.5, 4, 8)
)" + two_local});

    p.push_back({"fig3", "Thermodynamic validity: XX pairs (j = 1/2, 1) with h2 = 2.4, T = (1, 2.4), scanning h1",
                 R"(
[meta]
name = fig3

[system]
spins = 1/2, 1/2
fields = 0.5, 2.4
interaction = xx
J = 0.05

[bath]
temperatures = 1.0, 2.4
coupling = flat
Gamma = 0.05

[qme]
mode = local

[sweep]
axis1 = j: 1/2, 1
axis2 = h1: linspace(0.1, 1.5, 29)

[evolution]
dt = 0.05
t_max = 2e5
convergence_tol = 1e-10
)"});

    p.push_back({"fig4-pi6", "Two-spin bilinear-biquadratic chain, phi = pi/6, j = 1..2 versus J",
                 "\n[meta]\nname = fig4-pi6\n" + bb_two_spin("pi/6")});
    p.push_back({"fig4-pi3", "Two-spin bilinear-biquadratic chain, phi = pi/3, j = 1..2 versus J",
                 "\n[meta]\nname = fig4-pi3\n" + bb_two_spin("pi/3")});
    p.push_back({"fig4-2pi3", "Two-spin bilinear-biquadratic chain, phi = 2pi/3, j = 1..2 versus J",
                 "\n[meta]\nname = fig4-2pi3\n" + bb_two_spin("2pi/3")});

    p.push_back({"fig5-half", "Cooling scatter over (J, h2 - h1) for two spin-1/2",
                 "\n[meta]\nname = fig5-half\n" + scatter("1/2")});
    p.push_back({"fig5-one", "Cooling scatter over (J, h2 - h1) for two spin-1",
                 "\n[meta]\nname = fig5-one\n" + scatter("1")});
    p.push_back({"fig5-threehalves", "Cooling scatter over (J, h2 - h1) for two spin-3/2",
                 "\n[meta]\nname = fig5-threehalves\n" + scatter("3/2")});

    p.push_back({"fig6", "Cooling factor versus T1 with T2 = T1 + 0.4, J = 0.05, j = 1/2, 1, 3/2",
                 R"(
[meta]
name = fig6

[system]
spins = 1/2, 1/2
fields = 1.1, 1.3
interaction = xx
J = 0.05

[sweep]
axis1 = j: 1/2, 1, 3/2
axis2 = T1: linspace(1.0, 3.5, 51)
link = T2 = T1 + 0.4
)" + two_local});

    p.push_back({"fig7", "Trace, relative-entropy and fidelity DLTs versus J for j = 1/2, 1, 3/2",
                 R"(
[meta]
name = fig7

[system]
spins = 1/2, 1/2
fields = 1.1, 1.3
interaction = xx
J = 0.05

[thermometry]
measures = trace, relent, fidelity

[sweep]
axis1 = j: 1/2, 1, 3/2
axis2 = J: linspace(0.01, 0.1, 10)
)" + two_local});

    p.push_back({"fig8-global", "Global QME, XXZ with J*Delta = -1, two identical spins",
                 R"(
[meta]
name = fig8-global

[system]
spins = 1/2, 1/2
fields = 1.1, 1.3
interaction = xxz
J = 0.05
Jdelta = -1.0

[sweep]
axis1 = J: 0.05, 0.09
axis2 = j: linspace(0.5, 2, 4)
)" + two_global});

    p.push_back({"fig8-mixed-global", "Global QME, XXZ with J*Delta = -1, spin-1/2 plus spin-j",
                 R"(
[meta]
name = fig8-mixed-global

[system]
spins = 1/2, 1/2
fields = 1.1, 1.3
interaction = xxz
J = 0.05
Jdelta = -1.0

[sweep]
axis1 = J: 0.05, 0.09
axis2 = j2: linspace(0.5, 3, 6)
)" + two_global});

    p.push_back({"fig8-global-xx", "Global QME without the zz term (J*Delta = 0), identical spins",
                 R"(
[meta]
name = fig8-global-xx

[system]
spins = 1/2, 1/2
fields = 1.1, 1.3
interaction = xx
J = 0.05

[sweep]
axis1 = j: 1/2, 3/2
)" + two_global});

    p.push_back({"fig9", "Spin-1/2 cooled by a spin-j partner, XX coupling, local QME",
                 R"(
[meta]
name = fig9

[system]
spins = 1/2, 1/2
fields = 1.1, 1.3
interaction = mixed_xx
J = 0.09

[sweep]
axis1 = J: 0.02, 0.05, 0.09
axis2 = j2: linspace(0.5, 4, 8)
)" + two_local});

    p.push_back({"fig10", "Three-spin XX ring, h = (1.5, 2.5, 3.5), T = (1, 1.1, 1.5)",
                 R"(
[meta]
name = fig10

[system]
spins = 1/2, 1/2, 1/2
fields = 1.5, 2.5, 3.5
interaction = xx
J = 0.05

[sweep]
axis1 = J: 0.02, 0.05, 0.09
axis2 = j: 1/2, 1, 3/2, 2
)" + three_local});

    p.push_back({"fig10-bb-pi3", "Three-spin bilinear-biquadratic ring, phi = pi/3, global heat bookkeeping",
                 "\n[meta]\nname = fig10-bb-pi3\n" + bb_three_spin("pi/3")});
    p.push_back({"fig10-bb-2pi3", "Three-spin bilinear-biquadratic ring, phi = 2pi/3, global heat bookkeeping",
                 "\n[meta]\nname = fig10-bb-2pi3\n" + bb_three_spin("2pi/3")});
    return p;
}

} // namespace

const std::vector<Preset>& presets()
{
    static const std::vector<Preset> all = build();
    return all;
}

const Preset& find_preset(std::string_view name)
{
    for (const Preset& p : presets()) {
        if (p.name == name) return p;
    }
    throw std::invalid_argument("unknown preset '" + std::string(name) + "' (see list-presets)");
}

ExperimentConfig load_preset(std::string_view name)
{
    const Preset& p = find_preset(name);
    return parse_config(p.text, "preset:" + p.name);
}

} // namespace qfridge
