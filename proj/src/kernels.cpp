#include "mcadet/kernels.hpp"

namespace mcadet::kernels {

namespace detail {

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace detail

namespace {

Backend detect() {
#if defined(__x86_64__)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Backend::avx2;
#endif
    return Backend::scalar;
}

Backend g_backend = detect();

}  // namespace

Backend active() { return g_backend; }

void force_backend(Backend b) {
#if !defined(__x86_64__)
    b = Backend::scalar;
#endif
    g_backend = b;
}

std::string_view backend_name() {
    return g_backend == Backend::avx2 ? "avx2" : "scalar";
}

double dot(const double* x, const double* y, std::size_t n) {
#if defined(__x86_64__)
    if (g_backend == Backend::avx2) return detail::dot_avx2(x, y, n);
#endif
    return detail::dot_scalar(x, y, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
#if defined(__x86_64__)
    if (g_backend == Backend::avx2) {
        detail::axpy_avx2(a, x, y, n);
        return;
    }
#endif
    detail::axpy_scalar(a, x, y, n);
}

}  // namespace mcadet::kernels
