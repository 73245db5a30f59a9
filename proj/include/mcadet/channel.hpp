#pragma once

#include <utility>
#include <vector>

#include "mcadet/linalg.hpp"
#include "mcadet/rng.hpp"

namespace mcadet {

/// Complex R×K channel, factored into small-scale fading (Rayleigh, i.i.d.
/// Gaussian entries) and per-user large-scale power gains.
struct ComplexChannel {
    CMat g_tilde;                ///< R×K small-scale fading, unitless
    std::vector<double> lambda;  ///< K large-scale power gains, all > 0
    CMat h_tilde;                ///< R×K, h = g * sqrt(lambda_col)
};

/// Real-valued 2R×2K expansion. H = G * Lambda holds exactly by construction.
struct RealChannel {
    Mat g;       ///< [[Re, -Im],[Im, Re]] block expansion of the SSFC matrix
    Vec lambda;  ///< 2K diagonal of the LSFC matrix: sqrt(lambda_k), repeated twice
    Mat h;
};

struct CellScenario {
    double radius_m = 150.0;
    double carrier_freq_hz = 2e9;
    double bandwidth_hz = 25e6;
    double tx_power_dbm = 20.0;
    double noise_figure_db = 9.0;
    double min_distance_m = 10.0;
};

/// Draws the small-scale fading matrix; entries are i.i.d. complex Gaussian
/// with variance sigma_g^2 per real dimension.
ComplexChannel gen_ssfc(int r, int k, double sigma_g, Rng& rng);

/// Uniform user drops on the annulus [min_distance, radius] (uniform in
/// area, so radius density is linear) with a log-distance path-loss model:
/// PL(dB) = 128.1 + 37.6 log10(d_km). Returns linear power gains and the
/// drawn positions (meters, BS at origin).
std::pair<std::vector<double>, std::vector<std::pair<double, double>>> gen_lsfc_cell(
    int k, const CellScenario& scenario, Rng& rng);

double pathloss_db(double distance_m);
double noise_power_dbm(const CellScenario& scenario);

/// Complex -> real block expansion (fills h_tilde if absent).
RealChannel realify(const ComplexChannel& c);

/// Stacks Re over Im.
Vec realify_vector(const CVec& v);
CVec complexify_vector(const Vec& v);

}  // namespace mcadet
