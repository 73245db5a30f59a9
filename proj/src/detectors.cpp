#include "mcadet/detectors.hpp"

namespace mcadet {

Vec regularizer_diagonal(const Vec& lambda_sqrt_2k, double rho) {
    if (rho < 0.0) throw ParameterError("regularizer_diagonal: rho must be >= 0");
    Vec p(lambda_sqrt_2k.size());
    for (Eigen::Index k = 0; k < p.size(); ++k) {
        double lam = lambda_sqrt_2k(k) * lambda_sqrt_2k(k);
        if (!(lam > 0.0)) throw ParameterError("regularizer_diagonal: lambda must be positive");
        p(k) = rho / lam;
    }
    return p;
}

Vec zf_detect(const Mat& h, const Vec& y) { return mmse_detect(h, y, 0.0); }

Vec mmse_detect(const Mat& h, const Vec& y, double rho) {
    if (rho < 0.0) throw ParameterError("mmse_detect: rho must be >= 0");
    if (h.rows() != y.size()) throw DimensionError("detect: y length mismatch");
    Mat m = linalg::gram(h);
    m.diagonal().array() += rho;
    return linalg::spd_solve(m, linalg::matvec_t(h, y));
}

Vec zf_detect_factored(const Mat& g, const Vec& lambda_sqrt, const Vec& y) {
    Vec t = zf_detect(g, y);
    return t.cwiseQuotient(lambda_sqrt);
}

Vec mmse_detect_factored(const Mat& g, const Vec& lambda_sqrt, const Vec& y, double rho) {
    if (g.cols() != lambda_sqrt.size()) throw DimensionError("factored detect: lambda size");
    Mat m = linalg::gram(g);
    m.diagonal() += regularizer_diagonal(lambda_sqrt, rho);
    Vec t = linalg::spd_solve(m, linalg::matvec_t(g, y));
    return t.cwiseQuotient(lambda_sqrt);
}

}  // namespace mcadet
