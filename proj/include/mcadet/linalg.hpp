#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace mcadet {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RealizabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace linalg {

/// AᵀA, computed column-by-column with the dot kernel (symmetric fill).
Mat gram(const Mat& a);

/// AᵀB (columns of A dotted against columns of B).
Mat gram_ab(const Mat& a, const Mat& b);

/// Aᵀx
Vec matvec_t(const Mat& a, const Vec& x);

/// Ax via axpy over columns (column-major friendly).
Vec matvec(const Mat& a, const Vec& x);

/// Solves the SPD system Mx = b by Cholesky with a condition-number guard
/// (power/inverse iteration estimate, threshold 1e12). Throws
/// SingularMatrixError on a failed factorization or an ill-conditioned M.
Vec spd_solve(const Mat& m, const Vec& b);

/// Condition estimate used by the guard; exposed for tests.
double spd_cond_estimate(const Mat& m);

}  // namespace linalg

}  // namespace mcadet
