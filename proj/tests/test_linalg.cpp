#include <doctest.h>

#include <Eigen/QR>

#include "mcadet/linalg.hpp"
#include "mcadet/rng.hpp"

using namespace mcadet;

namespace {

Mat random_mat(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    Mat m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.next_gaussian();
    }
    return m;
}

Vec random_vec(Eigen::Index n, Rng& rng) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.next_gaussian();
    return v;
}

}  // namespace

TEST_CASE("gram and gram_ab agree with dense products") {
    Rng rng(21, 0);
    Mat a = random_mat(17, 5, rng);
    Mat b = random_mat(17, 3, rng);
    CHECK((linalg::gram(a) - Mat(a.transpose() * a)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((linalg::gram_ab(a, b) - Mat(a.transpose() * b)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(linalg::gram_ab(a, random_mat(16, 3, rng)), DimensionError);
}

TEST_CASE("matvec and matvec_t agree with dense products") {
    Rng rng(22, 0);
    Mat a = random_mat(13, 6, rng);
    Vec x = random_vec(6, rng);
    Vec y = random_vec(13, rng);
    CHECK((linalg::matvec(a, x) - Vec(a * x)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((linalg::matvec_t(a, y) - Vec(a.transpose() * y)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(linalg::matvec(a, y), DimensionError);
    CHECK_THROWS_AS(linalg::matvec_t(a, x), DimensionError);
}

TEST_CASE("spd_solve matches a QR oracle") {
    Rng rng(23, 0);
    for (int rep = 0; rep < 20; ++rep) {
        Mat b = random_mat(12, 8, rng);
        Mat m = b.transpose() * b + 0.1 * Mat::Identity(8, 8);
        Vec rhs = random_vec(8, rng);
        Vec x = linalg::spd_solve(m, rhs);
        Vec oracle = m.colPivHouseholderQr().solve(rhs);
        CHECK((x - oracle).norm() / oracle.norm() < 1e-10);
        CHECK((m * x - rhs).norm() / rhs.norm() < 1e-10);
    }
}

TEST_CASE("spd_solve rejects indefinite and near-singular systems") {
    Mat neg = -Mat::Identity(3, 3);
    Vec b = Vec::Ones(3);
    CHECK_THROWS_AS(linalg::spd_solve(neg, b), SingularMatrixError);

    Mat ill = Mat::Identity(2, 2);
    ill(1, 1) = 1e-13;  // condition number 1e13, beyond the 1e12 guard
    CHECK_THROWS_AS(linalg::spd_solve(ill, Vec::Ones(2)), SingularMatrixError);

    Mat ok = Mat::Identity(2, 2);
    ok(1, 1) = 1e-9;
    CHECK_NOTHROW(linalg::spd_solve(ok, Vec::Ones(2)));

    CHECK_THROWS_AS(linalg::spd_solve(Mat::Identity(3, 3), Vec::Ones(2)), DimensionError);
}

TEST_CASE("condition estimate is accurate on diagonal matrices") {
    Mat d = Mat::Zero(4, 4);
    d.diagonal() << 100.0, 25.0, 4.0, 1.0;
    CHECK(linalg::spd_cond_estimate(d) == doctest::Approx(100.0).epsilon(0.05));

    Rng rng(24, 0);
    Mat b = random_mat(20, 6, rng);
    Mat m = b.transpose() * b + Mat::Identity(6, 6);
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    double exact = es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
    CHECK(linalg::spd_cond_estimate(m) == doctest::Approx(exact).epsilon(0.1));
}
