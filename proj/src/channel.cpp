#include "mcadet/channel.hpp"

#include <cmath>

namespace mcadet {

ComplexChannel gen_ssfc(int r, int k, double sigma_g, Rng& rng) {
    if (r < k || k < 1) throw DimensionError("gen_ssfc: require R >= K >= 1");
    if (!(sigma_g > 0.0)) throw ParameterError("gen_ssfc: sigma_g must be positive");
    ComplexChannel c;
    c.g_tilde.resize(r, k);
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < r; ++i) {
            double re = rng.next_gaussian(0.0, sigma_g);
            double im = rng.next_gaussian(0.0, sigma_g);
            c.g_tilde(i, j) = {re, im};
        }
    }
    c.lambda.assign(k, 1.0);
    c.h_tilde = c.g_tilde;
    return c;
}

double pathloss_db(double distance_m) {
    return 128.1 + 37.6 * std::log10(distance_m / 1000.0);
}

double noise_power_dbm(const CellScenario& s) {
    return -174.0 + 10.0 * std::log10(s.bandwidth_hz) + s.noise_figure_db;
}

std::pair<std::vector<double>, std::vector<std::pair<double, double>>> gen_lsfc_cell(
    int k, const CellScenario& s, Rng& rng) {
    if (k < 1) throw DimensionError("gen_lsfc_cell: K >= 1");
    if (!(s.radius_m > s.min_distance_m) || !(s.min_distance_m > 0.0)) {
        throw ParameterError("gen_lsfc_cell: require radius > min_distance > 0");
    }
    std::vector<double> lambda(k);
    std::vector<std::pair<double, double>> pos(k);
    const double r0sq = s.min_distance_m * s.min_distance_m;
    const double r1sq = s.radius_m * s.radius_m;
    for (int j = 0; j < k; ++j) {
        double d = std::sqrt(r0sq + (r1sq - r0sq) * rng.next_unit());
        double phi = 2.0 * M_PI * rng.next_unit();
        pos[j] = {d * std::cos(phi), d * std::sin(phi)};
        lambda[j] = std::pow(10.0, -pathloss_db(d) / 10.0);
    }
    return {lambda, pos};
}

RealChannel realify(const ComplexChannel& c) {
    const int r = static_cast<int>(c.g_tilde.rows());
    const int k = static_cast<int>(c.g_tilde.cols());
    if (static_cast<int>(c.lambda.size()) != k) {
        throw DimensionError("realify: lambda size mismatch");
    }
    RealChannel rc;
    rc.g.resize(2 * r, 2 * k);
    rc.g.topLeftCorner(r, k) = c.g_tilde.real();
    rc.g.topRightCorner(r, k) = -c.g_tilde.imag();
    rc.g.bottomLeftCorner(r, k) = c.g_tilde.imag();
    rc.g.bottomRightCorner(r, k) = c.g_tilde.real();
    rc.lambda.resize(2 * k);
    for (int j = 0; j < k; ++j) {
        if (!(c.lambda[j] > 0.0)) throw ParameterError("realify: lambda must be positive");
        double sq = std::sqrt(c.lambda[j]);
        rc.lambda(j) = sq;
        rc.lambda(j + k) = sq;
    }
    rc.h = rc.g * rc.lambda.asDiagonal();
    return rc;
}

Vec realify_vector(const CVec& v) {
    Vec out(2 * v.size());
    out.head(v.size()) = v.real();
    out.tail(v.size()) = v.imag();
    return out;
}

CVec complexify_vector(const Vec& v) {
    if (v.size() % 2 != 0) throw DimensionError("complexify_vector: odd length");
    const Eigen::Index k = v.size() / 2;
    CVec out(k);
    for (Eigen::Index i = 0; i < k; ++i) out(i) = {v(i), v(i + k)};
    return out;
}

}  // namespace mcadet
