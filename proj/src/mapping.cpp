#include "mcadet/mapping.hpp"

#include <cmath>

namespace mcadet {

MappedMatrix map_matrix(const Mat& u, double alpha, const ConductanceRange& range) {
    range.validate();
    if (!(alpha > 0.0)) throw ParameterError("map_matrix: alpha must be positive");
    MappedMatrix m;
    m.alpha = alpha;
    m.x.resize(u.rows(), u.cols());
    m.z.resize(u.rows(), u.cols());
    // Excursions within a few ulps of the window edges are rounding artefacts
    // of alpha * u (e.g. the extremal element under instance scaling), not
    // genuine clips; clamp them silently.
    const double tol = range.span() * 1e-12;
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
        for (Eigen::Index i = 0; i < u.rows(); ++i) {
            double x = u(i, j) > 0.0 ? range.w_max : range.w_min;
            double z = x - alpha * u(i, j);
            if (z < range.w_min) {
                if (z < range.w_min - tol) ++m.clip_count;
                z = range.w_min;
            } else if (z > range.w_max) {
                if (z > range.w_max + tol) ++m.clip_count;
                z = range.w_max;
            }
            m.x(i, j) = x;
            m.z(i, j) = z;
        }
    }
    return m;
}

Mat unmap(const MappedMatrix& m) { return (m.x - m.z) / m.alpha; }

double scb_alpha(double sigma_u, double beta, const ConductanceRange& range) {
    range.validate();
    if (!(sigma_u > 0.0) || !(beta > 0.0)) {
        throw ParameterError("scb_alpha: sigma_u and beta must be positive");
    }
    return range.span() / (beta * sigma_u);
}

double sigma_u_for_g(double sigma_g) {
    if (!(sigma_g > 0.0)) throw ParameterError("sigma_u_for_g: sigma_g must be positive");
    return sigma_g;
}

double sigma_u_for_h(const Vec& lambda, double sigma_g) {
    if (!(sigma_g > 0.0)) throw ParameterError("sigma_u_for_h: sigma_g must be positive");
    if (lambda.size() == 0) throw DimensionError("sigma_u_for_h: empty lambda");
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        if (!(lambda(k) > 0.0)) throw ParameterError("sigma_u_for_h: lambda must be positive");
    }
    return std::sqrt(lambda.mean()) * sigma_g;
}

double icb_alpha(const Mat& u, const ConductanceRange& range) {
    range.validate();
    double m = u.cwiseAbs().maxCoeff();
    if (!(m > 0.0)) throw ParameterError("icb_alpha: all-zero matrix");
    return range.span() / m;
}

MappedMatrix perturb(const MappedMatrix& m, const ErrorModel& err, Rng& rng,
                     const ConductanceRange& range) {
    if (err.sigma_m < 0.0) throw ParameterError("perturb: sigma_m must be >= 0");
    MappedMatrix out = m;
    if (err.sigma_m == 0.0) return out;
    for (Eigen::Index j = 0; j < m.x.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.x.rows(); ++i) {
            out.x(i, j) += rng.next_gaussian(0.0, err.sigma_m);
            out.z(i, j) += rng.next_gaussian(0.0, err.sigma_m);
            if (err.strict_clip) {
                out.x(i, j) = std::clamp(out.x(i, j), range.w_min, range.w_max);
                out.z(i, j) = std::clamp(out.z(i, j), range.w_min, range.w_max);
            }
        }
    }
    return out;
}

}  // namespace mcadet
