// Reference steady-state values computed independently with a dense
// Liouvillian null-space solve and a bounded scalar minimizer.

#include <doctest.h>

#include "support.hpp"

using namespace qfridge;
using namespace qfridge::testing;

namespace {

struct Reference {
    std::vector<double> spins;
    QmeMode mode;
    double coupling;
    double jdelta;
    double t1_steady;
    double q1;  // local-convention current, NaN when not frozen
};

const Reference kCases[] = {
    {{0.5, 0.5}, QmeMode::Local, 0.09, 0.0, 0.9941377347766612, 3.333393980204222e-05},
    {{1, 1}, QmeMode::Local, 0.09, 0.0, 0.9867281992074647, 1.8450978228110124e-04},
    {{0.5, 1.5}, QmeMode::Local, 0.09, 0.0, 0.9778237773220023, 1.276071988791524e-04},
    {{0.5, 0.5}, QmeMode::Global, 0.05, -1.0, 0.8112985101226774, std::nan("")},
    {{1.5, 1.5}, QmeMode::Global, 0.05, -1.0, 0.4644297120785799, std::nan("")},
};

} // namespace

TEST_CASE("frozen reference steady states")
{
    for (const Reference& ref : kCases) {
        CAPTURE(ref.spins[1]);
        const SystemSpec sys = make_system(ref.spins, {1.1, 1.3}, XyzInteraction{ref.coupling, 0.0, ref.jdelta / ref.coupling});
        const BathSpec baths = ref.mode == QmeMode::Local ? flat_baths({1.0, 1.1}) : ohmic_baths({1.0, 1.1});
        const Hamiltonian h = build_hamiltonian(sys);
        const DissipatorSet set = ref.mode == QmeMode::Local ? local_lindblad_set(sys, baths)
                                                             : global_lindblad_set(sys, baths, h);
        const Operator steady = nullspace_steady_state(h.system, set).state;
        const DensityMatrix r1 = partial_trace(DensityMatrix(hermitize(steady)), 0, sys.dims());
        TemperatureSearch search;
        search.t_max = 11.0;
        const double t1 = dlt(r1, sys.sites[0].spin, 1.1, DistanceMeasure::TraceDistance, search).temperature;
        CHECK(t1 == doctest::Approx(ref.t1_steady).epsilon(1e-7));
        if (!std::isnan(ref.q1)) {
            CHECK(heat_current(steady, h, set, 0, HeatConvention::Local) == doctest::Approx(ref.q1).epsilon(1e-9));
        }
    }
}
