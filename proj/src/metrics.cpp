#include "mcadet/metrics.hpp"

namespace mcadet {

std::int64_t oa_count(Topology kind, int r, int k) {
    std::int64_t n = 2LL * r + 2LL * k;
    if (kind == Topology::proposed) n += 2LL * k;
    return n;
}

double crossbar_dissipation(const CircuitInstance& c, const CircuitSolution& sol) {
    double p = 0.0;
    // Crossbars A and B see v2 across each device (rows at virtual ground),
    // C and D see v1.
    for (Eigen::Index j = 0; j < c.cols2(); ++j) {
        double v2sq = sol.v2(j) * sol.v2(j);
        p += (c.a.col(j).sum() + c.b.col(j).sum()) * v2sq;
    }
    for (Eigen::Index i = 0; i < c.rows2(); ++i) {
        double v1sq = sol.v1(i) * sol.v1(i);
        p += (c.c.row(i).sum() + c.d.row(i).sum()) * v1sq;
        p += c.delta0(i) * v1sq;
    }
    for (Eigen::Index j = 0; j < c.cols2(); ++j) {
        double v2sq = sol.v2(j) * sol.v2(j);
        if (c.delta_fb.size() > 0) p += c.delta_fb(j) * v2sq;
        if (c.kind == Topology::proposed) {
            p += c.theta0(j) * v2sq;
            p += c.theta(j) * sol.vout(j) * sol.vout(j);
        }
    }
    return p;
}

double total_power(const CircuitInstance& c, const CircuitSolution* sol, const PowerModel& pm) {
    pm.validate();
    int r = static_cast<int>(c.rows2() / 2);
    int k = static_cast<int>(c.cols2() / 2);
    double p = total_power_nominal(c.kind, r, k, pm);
    if (pm.include_crossbar_dissipation && sol != nullptr) p += crossbar_dissipation(c, *sol);
    return p;
}

double total_power_nominal(Topology kind, int r, int k, const PowerModel& pm) {
    pm.validate();
    return static_cast<double>(oa_count(kind, r, k)) * pm.p_oa_w +
           static_cast<double>(pm.n_dac) * pm.p_dac_w +
           static_cast<double>(pm.n_adc) * pm.p_adc_w;
}

double rapc(double p_proposed, double p_conventional) {
    if (!(p_conventional > 0.0)) throw ParameterError("rapc: conventional power must be > 0");
    return (p_proposed - p_conventional) / p_conventional;
}

std::int64_t equivalent_flops(int r, int k, DetectorKind kind) {
    if (r < 1 || k < 1) throw ParameterError("equivalent_flops: dimensions must be >= 1");
    std::int64_t n = 2LL * k;
    std::int64_t m = 2LL * r;
    std::int64_t flops = n * (n + 1) / 2 * (2 * m - 1);  // symmetric Gram
    if (kind == DetectorKind::mmse) flops += n;          // + rho I
    flops += n * n * n;                                  // SPD inversion
    flops += n * (2 * m - 1);                            // H^T y
    flops += n * (2 * n - 1);                            // inverse times vector
    return flops;
}

ComputeMetrics compute_metrics(std::int64_t flops, double time_s, double power_w) {
    if (!(time_s > 0.0)) throw ParameterError("compute_metrics: time must be positive");
    if (!(power_w > 0.0)) throw ParameterError("compute_metrics: power must be positive");
    ComputeMetrics cm;
    cm.flops = flops;
    cm.time_s = time_s;
    cm.power_w = power_w;
    cm.tops = static_cast<double>(flops) / time_s / 1e12;
    cm.tops_per_watt = cm.tops / power_w;
    return cm;
}

}  // namespace mcadet
