#include <doctest.h>

#include <vector>

#include "mcadet/kernels.hpp"
#include "mcadet/rng.hpp"

using namespace mcadet;

namespace {

struct BackendGuard {
    kernels::Backend saved = kernels::active();
    ~BackendGuard() { kernels::force_backend(saved); }
};

std::vector<double> random_vec(std::size_t n, Rng& rng) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.next_gaussian();
    return v;
}

}  // namespace

TEST_CASE("dot matches a long-double reference on the scalar backend") {
    BackendGuard guard;
    kernels::force_backend(kernels::Backend::scalar);
    Rng rng(11, 0);
    for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{3}, std::size_t{4},
                          std::size_t{7}, std::size_t{8}, std::size_t{17}, std::size_t{1000}}) {
        auto x = random_vec(n, rng);
        auto y = random_vec(n, rng);
        long double ref = 0.0L;
        for (std::size_t i = 0; i < n; ++i) ref += static_cast<long double>(x[i]) * y[i];
        double got = kernels::dot(x.data(), y.data(), n);
        CHECK(got == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
    }
}

TEST_CASE("axpy matches elementwise reference") {
    BackendGuard guard;
    kernels::force_backend(kernels::Backend::scalar);
    Rng rng(12, 0);
    auto x = random_vec(129, rng);
    auto y = random_vec(129, rng);
    auto expect = y;
    for (std::size_t i = 0; i < x.size(); ++i) expect[i] += 2.5 * x[i];
    kernels::axpy(2.5, x.data(), y.data(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(y[i] == doctest::Approx(expect[i]));
}

TEST_CASE("simd backend agrees with the scalar reference") {
    BackendGuard guard;
    kernels::force_backend(kernels::Backend::avx2);
    if (kernels::active() != kernels::Backend::avx2) {
        MESSAGE("avx2 unavailable on this host; dispatch fell back to scalar");
        return;
    }
    Rng rng(13, 0);
    for (std::size_t n = 0; n <= 67; ++n) {
        auto x = random_vec(n, rng);
        auto y = random_vec(n, rng);

        kernels::force_backend(kernels::Backend::scalar);
        double dot_ref = kernels::dot(x.data(), y.data(), n);
        auto y_ref = y;
        kernels::axpy(-1.75, x.data(), y_ref.data(), n);

        kernels::force_backend(kernels::Backend::avx2);
        double dot_simd = kernels::dot(x.data(), y.data(), n);
        auto y_simd = y;
        kernels::axpy(-1.75, x.data(), y_simd.data(), n);

        CHECK(dot_simd == doctest::Approx(dot_ref).epsilon(1e-13));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(y_simd[i] == doctest::Approx(y_ref[i]).epsilon(1e-13));
        }
    }
}

TEST_CASE("backend name reflects the forced backend") {
    BackendGuard guard;
    kernels::force_backend(kernels::Backend::scalar);
    CHECK(kernels::backend_name() == "scalar");
}
