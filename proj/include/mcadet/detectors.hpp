#pragma once

#include "mcadet/linalg.hpp"

namespace mcadet {

enum class DetectorKind { zf, mmse };

struct LinearDetectorSpec {
    DetectorKind kind = DetectorKind::zf;
    double rho = 0.0;  ///< noise-to-symbol-energy ratio, 0 for ZF
};

/// Diagonal regularizer for the factored MMSE form: rho/lambda_k, repeated
/// twice (indices k and k+K share lambda_k).
Vec regularizer_diagonal(const Vec& lambda_sqrt_2k, double rho);

/// (HᵀH)⁻¹Hᵀy
Vec zf_detect(const Mat& h, const Vec& y);

/// (HᵀH + rho I)⁻¹Hᵀy
Vec mmse_detect(const Mat& h, const Vec& y, double rho);

/// Λ⁻¹(GᵀG)⁻¹Gᵀy, with lambda_sqrt the 2K diagonal of Λ.
Vec zf_detect_factored(const Mat& g, const Vec& lambda_sqrt, const Vec& y);

/// Λ⁻¹(GᵀG + P)⁻¹Gᵀy, P = diag(rho/lambda_k) repeated twice.
Vec mmse_detect_factored(const Mat& g, const Vec& lambda_sqrt, const Vec& y, double rho);

}  // namespace mcadet
