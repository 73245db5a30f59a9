#include "mcadet/linalg.hpp"

#include <cmath>

#include "mcadet/kernels.hpp"

namespace mcadet::linalg {

namespace {

constexpr double kCondLimit = 1e12;

// Plain Cholesky, M = LLᵀ. Throws on a non-positive pivot.
Mat cholesky(const Mat& m) {
    const Eigen::Index n = m.rows();
    Mat l = Mat::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double d = m(j, j);
        for (Eigen::Index k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > 0.0) || !std::isfinite(d)) {
            throw SingularMatrixError("spd_solve: non-positive pivot at row " + std::to_string(j));
        }
        l(j, j) = std::sqrt(d);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            double s = m(i, j);
            for (Eigen::Index k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

Vec chol_solve(const Mat& l, const Vec& b) {
    const Eigen::Index n = l.rows();
    Vec y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double s = b(i);
        for (Eigen::Index k = 0; k < i; ++k) s -= l(i, k) * y(k);
        y(i) = s / l(i, i);
    }
    Vec x(n);
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        double s = y(i);
        for (Eigen::Index k = i + 1; k < n; ++k) s -= l(k, i) * x(k);
        x(i) = s / l(i, i);
    }
    return x;
}

// Deterministic start vector keeps the estimate reproducible.
Vec start_vec(Eigen::Index n) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = 1.0 + 0.5 * std::cos(static_cast<double>(i));
    return v.normalized();
}

}  // namespace

Mat gram(const Mat& a) {
    const Eigen::Index n = a.cols();
    const std::size_t m = static_cast<std::size_t>(a.rows());
    Mat g(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i <= j; ++i) {
            double v = kernels::dot(a.col(i).data(), a.col(j).data(), m);
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    return g;
}

Mat gram_ab(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw DimensionError("gram_ab: row mismatch");
    const std::size_t m = static_cast<std::size_t>(a.rows());
    Mat g(a.cols(), b.cols());
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.cols(); ++i) {
            g(i, j) = kernels::dot(a.col(i).data(), b.col(j).data(), m);
        }
    }
    return g;
}

Vec matvec_t(const Mat& a, const Vec& x) {
    if (a.rows() != x.size()) throw DimensionError("matvec_t: size mismatch");
    const std::size_t m = static_cast<std::size_t>(a.rows());
    Vec y(a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        y(j) = kernels::dot(a.col(j).data(), x.data(), m);
    }
    return y;
}

Vec matvec(const Mat& a, const Vec& x) {
    if (a.cols() != x.size()) throw DimensionError("matvec: size mismatch");
    Vec y = Vec::Zero(a.rows());
    const std::size_t m = static_cast<std::size_t>(a.rows());
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        kernels::axpy(x(j), a.col(j).data(), y.data(), m);
    }
    return y;
}

double spd_cond_estimate(const Mat& m) {
    const Eigen::Index n = m.rows();
    if (n == 1) return 1.0;
    Mat l = cholesky(m);
    Vec v = start_vec(n);
    double lmax = 0.0;
    for (int it = 0; it < 20; ++it) {
        Vec w = m * v;
        lmax = w.norm();
        if (lmax == 0.0) throw SingularMatrixError("spd_cond_estimate: zero matrix");
        v = w / lmax;
    }
    Vec u = start_vec(n);
    double inv_norm = 1.0;
    for (int it = 0; it < 20; ++it) {
        Vec w = chol_solve(l, u);
        inv_norm = w.norm();
        u = w / inv_norm;
    }
    return lmax * inv_norm;
}

Vec spd_solve(const Mat& m, const Vec& b) {
    if (m.rows() != m.cols() || m.rows() != b.size()) {
        throw DimensionError("spd_solve: dimension mismatch");
    }
    Mat l = cholesky(m);
    if (m.rows() > 1) {
        // Reuse the factorization for the small-side estimate.
        Vec v = start_vec(m.rows());
        double lmax = 0.0;
        for (int it = 0; it < 20; ++it) {
            Vec w = m * v;
            lmax = w.norm();
            v = w / lmax;
        }
        Vec u = start_vec(m.rows());
        double inv_norm = 1.0;
        for (int it = 0; it < 20; ++it) {
            Vec w = chol_solve(l, u);
            inv_norm = w.norm();
            u = w / inv_norm;
        }
        if (lmax * inv_norm > kCondLimit) {
            throw SingularMatrixError("spd_solve: condition estimate above 1e12");
        }
    }
    return chol_solve(l, b);
}

}  // namespace mcadet::linalg
