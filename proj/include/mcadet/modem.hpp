#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "mcadet/linalg.hpp"
#include "mcadet/rng.hpp"

namespace mcadet {

using BitVec = std::vector<uint8_t>;

/// Square-QAM constellation description. Table-driven: gray_map[b] is the
/// point transmitted for the 6-bit pattern b (first 3 bits in-phase, last 3
/// quadrature). Mean symbol energy equals p_s.
struct ModulationSpec {
    int order = 64;
    int bits_per_symbol = 6;
    double p_s = 1.0;
    std::vector<std::complex<double>> gray_map;
    std::vector<double> levels;  ///< per-dimension PAM levels, ascending

    static ModulationSpec qam64(double p_s = 1.0);
};

struct NoiseSpec {
    double sigma_n_sq = 0.0;  ///< complex noise variance per element
    double per_real_dim() const { return sigma_n_sq / 2.0; }
};

CVec modulate(const BitVec& bits, const ModulationSpec& spec);

/// Hard-decision slicer on the stacked real vector (dims k and k+K form one
/// complex symbol). Ties resolve toward the smaller-magnitude level.
BitVec demodulate(const Vec& s_hat, const ModulationSpec& spec);

Vec awgn(Eigen::Index len, const NoiseSpec& noise, Rng& rng);

/// sigma_n^2 = p_s * gain / 10^(snr_db/10); gain is the mean per-antenna
/// channel power gain under the harness SNR convention.
NoiseSpec snr_to_noise_var(double snr_db, double p_s, double gain);

std::size_t count_bit_errors(const BitVec& a, const BitVec& b);

BitVec random_bits(std::size_t n, Rng& rng);

}  // namespace mcadet
