#pragma once

#include <Eigen/LU>
#include <vector>

#include "mcadet/detectors.hpp"
#include "mcadet/linalg.hpp"
#include "mcadet/mapping.hpp"
#include "mcadet/rng.hpp"

namespace mcadet {

enum class Topology { proposed, conventional };

/// Full conductance state of a detector circuit. The four crossbars A..D
/// realize E = A - B and F = C - D; the first OA set has one feedback device
/// per row (delta0), the second one per column (delta_fb, absent for ZF
/// where the regularizer branch is omitted). The amplifier stage (theta0,
/// theta) exists only for the proposed topology.
struct CircuitInstance {
    Topology kind = Topology::proposed;
    DetectorKind detector = DetectorKind::zf;
    Mat a, b, c, d;          ///< 2R×2K conductance matrices
    Vec delta0;              ///< 2R
    Vec delta_fb;            ///< 2K, empty for ZF
    Vec theta0, theta;       ///< 2K each, empty for conventional
    double input_gain = 1e-6;   ///< amperes per unit of y
    double output_scale = 1.0;  ///< volts -> symbol units (sign applied per topology)
    double alpha = 0.0;         ///< conductance mapping scale actually used
    std::int64_t clip_count = 0;
    std::int64_t mapped_elements = 0;
    ConductanceRange range;

    Mat e() const { return a - b; }
    Mat f() const { return c - d; }
    Eigen::Index rows2() const { return a.rows(); }
    Eigen::Index cols2() const { return a.cols(); }
};

struct CircuitSolution {
    Vec v1;     ///< first OA set outputs, 2R
    Vec v2;     ///< second OA set outputs, 2K
    Vec vout;   ///< amplifier outputs (proposed), empty otherwise
    Vec s_hat;  ///< rescaled symbol estimate, 2K
};

struct TransientSpec {
    double gbp_hz = 500e6;
    double dc_gain = 1e6;
    double t_end_s = 2e-6;
    double dt_s = 0.0;  ///< 0 = auto: 1/(2*pi*gbp)/20
    double settle_tol = 1e-3;
    int trace_stride = 8;  ///< keep every Nth sample in the trace

    double dt() const;
    void validate() const;
};

struct TransientResult {
    std::vector<double> time_s;
    Mat outputs;  ///< one column per kept sample, 2K rows (circuit outputs)
    double settle_time_s = 0.0;
    CircuitSolution final;
};

/// Maps G onto E and F (independent device draws), realizes the MMSE
/// regularizer P through the delta0*delta_k products, and the LSFC
/// diagonal through the amplifier ratios theta_k/theta0. sigma_g feeds the
/// SCB scaling rule.
CircuitInstance build_proposed(const Mat& g, const Vec& lambda_sqrt, double sigma_g,
                               const LinearDetectorSpec& det, const MappingScheme& scheme,
                               const ConductanceRange& range, const ErrorModel& err, Rng& rng);

/// Maps the full channel matrix H; no amplifier stage, output read at -v2.
CircuitInstance build_conventional(const Mat& h, const Vec& lambda_sqrt, double sigma_g,
                                   const LinearDetectorSpec& det, const MappingScheme& scheme,
                                   const ConductanceRange& range, const ErrorModel& err,
                                   Rng& rng);

/// Steady-state nodal solution (ideal OAs). Throws SingularMatrixError if
/// the loop matrix is numerically singular.
CircuitSolution solve_algebraic(const CircuitInstance& c, const Vec& y);

/// Prefactored solver for repeated right-hand sides on one instance.
class CircuitSolver {
public:
    explicit CircuitSolver(const CircuitInstance& c);
    CircuitSolution solve(const Vec& y) const;

private:
    const CircuitInstance& c_;
    Mat w_;  ///< D0^{-1} E
    Eigen::PartialPivLU<Mat> lu_;
};

/// Fixed-step integration of the circuit with single-pole OA models.
TransientResult transient_solve(const CircuitInstance& c, const Vec& y,
                                const TransientSpec& spec);

/// Applies output_scale (and the conventional sign flip) to raw voltages.
Vec rescale_output(const CircuitInstance& c, const Vec& v);

}  // namespace mcadet
