#pragma once

#include <cstddef>
#include <string_view>

namespace mcadet::kernels {

enum class Backend { scalar, avx2 };

/// Backend picked at startup from CPUID; force_backend overrides (tests).
Backend active();
void force_backend(Backend b);
std::string_view backend_name();

/// sum_i x[i]*y[i]
double dot(const double* x, const double* y, std::size_t n);

/// y[i] += a*x[i]
void axpy(double a, const double* x, double* y, std::size_t n);

namespace detail {
double dot_scalar(const double* x, const double* y, std::size_t n);
void axpy_scalar(double a, const double* x, double* y, std::size_t n);
#if defined(__x86_64__)
double dot_avx2(const double* x, const double* y, std::size_t n);
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
#endif
}  // namespace detail

}  // namespace mcadet::kernels
