#include <doctest.h>

#include "mcadet/metrics.hpp"

using namespace mcadet;

namespace {

// Minimal hand-built 1x1 conventional instance: one device of g siemens in
// crossbar A, v2 across it.
CircuitInstance single_device(double g) {
    CircuitInstance c;
    c.kind = Topology::conventional;
    c.a = Mat::Constant(1, 1, g);
    c.b = Mat::Zero(1, 1);
    c.c = Mat::Zero(1, 1);
    c.d = Mat::Zero(1, 1);
    c.delta0 = Vec::Zero(1);
    return c;
}

}  // namespace

TEST_CASE("op-amp counts") {
    CHECK(oa_count(Topology::conventional, 64, 4) == 136);
    CHECK(oa_count(Topology::proposed, 64, 4) == 144);
    CHECK(oa_count(Topology::proposed, 1, 1) == 6);
}

TEST_CASE("crossbar dissipation on a hand-checked device") {
    CircuitInstance c = single_device(1e-6);
    CircuitSolution sol;
    sol.v1 = Vec::Zero(1);
    sol.v2 = Vec::Ones(1);
    // 1 uS at 1 V dissipates 1 uW
    CHECK(crossbar_dissipation(c, sol) == doctest::Approx(1e-6));
    sol.v2(0) = 2.0;  // power is quadratic in voltage
    CHECK(crossbar_dissipation(c, sol) == doctest::Approx(4e-6));
    sol.v2(0) = 0.0;
    CHECK(crossbar_dissipation(c, sol) == doctest::Approx(0.0));
}

TEST_CASE("total power composition") {
    PowerModel pm;
    pm.p_oa_w = 12e-6;
    pm.n_dac = 128;
    pm.n_adc = 8;
    double p_conv = total_power_nominal(Topology::conventional, 64, 4, pm);
    double p_prop = total_power_nominal(Topology::proposed, 64, 4, pm);
    CHECK(p_conv == doctest::Approx(136 * 12e-6 + 128 * 0.5e-3 + 8 * 1e-3));
    // the proposed circuit adds exactly 2K amplifier op-amps
    CHECK(p_prop - p_conv == doctest::Approx(8 * 12e-6));

    CircuitInstance c = single_device(1e-6);
    CircuitSolution sol;
    sol.v1 = Vec::Zero(1);
    sol.v2 = Vec::Ones(1);
    PowerModel with_xbar = pm;
    with_xbar.include_crossbar_dissipation = true;
    CHECK(total_power(c, &sol, with_xbar) - total_power(c, &sol, pm) == doctest::Approx(1e-6));

    PowerModel bad = pm;
    bad.p_oa_w = -1.0;
    CHECK_THROWS_AS(bad.validate(), ParameterError);
}

TEST_CASE("rapc definition and converter cancellation") {
    CHECK(rapc(1.02, 1.0) == doctest::Approx(0.02));
    CHECK_THROWS_AS(rapc(1.0, 0.0), ParameterError);

    // the proposed-minus-conventional difference never depends on DAC/ADC
    PowerModel pm;
    pm.n_dac = 128;
    pm.n_adc = 8;
    for (double scale : {1.0, 10.0, 100.0}) {
        PowerModel s = pm;
        s.p_dac_w *= scale;
        s.p_adc_w *= scale;
        double diff = total_power_nominal(Topology::proposed, 64, 4, s) -
                      total_power_nominal(Topology::conventional, 64, 4, s);
        CHECK(diff == doctest::Approx(8 * 12e-6));
    }
}

TEST_CASE("equivalent flop count, hand-checked at R=K=1") {
    // n = 2, m = 2: gram 3*3, inversion 8, H^T y 6, solve-apply 6
    CHECK(equivalent_flops(1, 1, DetectorKind::zf) == 29);
    CHECK(equivalent_flops(1, 1, DetectorKind::mmse) == 31);
    CHECK(equivalent_flops(64, 4, DetectorKind::mmse) >
          equivalent_flops(64, 2, DetectorKind::mmse));
    CHECK_THROWS_AS(equivalent_flops(0, 1, DetectorKind::zf), ParameterError);
}

TEST_CASE("compute metrics, hand-checked") {
    // 8000 flops in 80 ns at 1 mW: 0.1 TOPS, 100 TOPS/W
    ComputeMetrics cm = compute_metrics(8000, 80e-9, 1e-3);
    CHECK(cm.tops == doctest::Approx(0.1));
    CHECK(cm.tops_per_watt == doctest::Approx(100.0));
    CHECK_THROWS_AS(compute_metrics(1, 0.0, 1.0), ParameterError);
    CHECK_THROWS_AS(compute_metrics(1, 1.0, 0.0), ParameterError);
}
