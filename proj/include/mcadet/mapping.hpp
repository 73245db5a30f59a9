#pragma once

#include <cstdint>

#include "mcadet/linalg.hpp"
#include "mcadet/rng.hpp"

namespace mcadet {

/// Programmable conductance window of the memristive devices, in siemens.
struct ConductanceRange {
    double w_min = 0.1e-6;
    double w_max = 30e-6;
    double span() const { return w_max - w_min; }
    void validate() const {
        if (!(w_min > 0.0) || !(w_max > w_min)) {
            throw ParameterError("ConductanceRange: require 0 < w_min < w_max");
        }
    }
};

/// A signed matrix held on hardware as the difference of two positive
/// conductance matrices: U ≈ (X - Z)/alpha. X entries are always one of the
/// two range endpoints; out-of-range Z entries are clipped and counted.
struct MappedMatrix {
    Mat x;
    Mat z;
    double alpha = 0.0;  ///< siemens per matrix unit
    std::int64_t clip_count = 0;
};

struct ErrorModel {
    double sigma_m = 0.0;  ///< conductance error std, siemens
    bool perturb_feedback = true;
    bool perturb_amplifier = true;
    bool strict_clip = false;  ///< re-clip perturbed conductances (off by default)
};

enum class MappingSchemeKind { scb, icb };

struct MappingScheme {
    MappingSchemeKind kind = MappingSchemeKind::icb;
    double beta = 3.0;  ///< SCB scaling parameter, unused for ICB
};

MappedMatrix map_matrix(const Mat& u, double alpha, const ConductanceRange& range);

/// (X - Z)/alpha; clipped elements come back at ±span/alpha.
Mat unmap(const MappedMatrix& m);

/// SCB scaling factor: span / (beta * sigma_u).
double scb_alpha(double sigma_u, double beta, const ConductanceRange& range);

/// Element std of the mapped matrix when mapping the SSFC matrix directly.
double sigma_u_for_g(double sigma_g);

/// Element std when the full channel matrix is mapped:
/// sqrt(mean(lambda)) * sigma_g.
double sigma_u_for_h(const Vec& lambda, double sigma_g);

/// ICB scaling factor: span / max|u|; never clips.
double icb_alpha(const Mat& u, const ConductanceRange& range);

/// Adds i.i.d. N(0, sigma_m^2) to every conductance of X and Z.
MappedMatrix perturb(const MappedMatrix& m, const ErrorModel& err, Rng& rng,
                     const ConductanceRange& range);

}  // namespace mcadet
