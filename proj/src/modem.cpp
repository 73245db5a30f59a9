#include "mcadet/modem.hpp"

#include <algorithm>
#include <cmath>

namespace mcadet {

namespace {

// bits pattern (3 bits, MSB first) -> level index, via the 3-bit Gray code
int pattern_to_level_index(int pattern) {
    for (int i = 0; i < 8; ++i) {
        if ((i ^ (i >> 1)) == pattern) return i;
    }
    return -1;  // unreachable
}

int level_index_to_pattern(int i) { return i ^ (i >> 1); }

// Nearest-level slicer; ties go to the smaller-magnitude level.
int slice_level(double x, const std::vector<double>& levels) {
    int best = 0;
    double best_d = std::abs(x - levels[0]);
    for (int i = 1; i < static_cast<int>(levels.size()); ++i) {
        double d = std::abs(x - levels[i]);
        if (d < best_d ||
            (d == best_d && std::abs(levels[i]) < std::abs(levels[best]))) {
            best = i;
            best_d = d;
        }
    }
    return best;
}

}  // namespace

ModulationSpec ModulationSpec::qam64(double p_s) {
    ModulationSpec spec;
    spec.p_s = p_s;
    const double scale = std::sqrt(p_s / 42.0);
    spec.levels.resize(8);
    for (int i = 0; i < 8; ++i) spec.levels[i] = (2.0 * i - 7.0) * scale;
    spec.gray_map.resize(64);
    for (int b = 0; b < 64; ++b) {
        int pi = (b >> 3) & 7;  // first 3 bits: in-phase
        int pq = b & 7;         // last 3 bits: quadrature
        spec.gray_map[b] = {spec.levels[pattern_to_level_index(pi)],
                            spec.levels[pattern_to_level_index(pq)]};
    }
    return spec;
}

CVec modulate(const BitVec& bits, const ModulationSpec& spec) {
    if (bits.size() % spec.bits_per_symbol != 0) {
        throw DimensionError("modulate: bit count not a multiple of bits_per_symbol");
    }
    const std::size_t n = bits.size() / spec.bits_per_symbol;
    CVec out(static_cast<Eigen::Index>(n));
    for (std::size_t s = 0; s < n; ++s) {
        int idx = 0;
        for (int b = 0; b < spec.bits_per_symbol; ++b) {
            idx = (idx << 1) | (bits[s * spec.bits_per_symbol + b] & 1);
        }
        out(static_cast<Eigen::Index>(s)) = spec.gray_map[idx];
    }
    return out;
}

BitVec demodulate(const Vec& s_hat, const ModulationSpec& spec) {
    if (s_hat.size() % 2 != 0) throw DimensionError("demodulate: expected 2K entries");
    const Eigen::Index k = s_hat.size() / 2;
    BitVec bits;
    bits.reserve(static_cast<std::size_t>(k) * spec.bits_per_symbol);
    for (Eigen::Index j = 0; j < k; ++j) {
        int pi = level_index_to_pattern(slice_level(s_hat(j), spec.levels));
        int pq = level_index_to_pattern(slice_level(s_hat(j + k), spec.levels));
        for (int b = 2; b >= 0; --b) bits.push_back(static_cast<uint8_t>((pi >> b) & 1));
        for (int b = 2; b >= 0; --b) bits.push_back(static_cast<uint8_t>((pq >> b) & 1));
    }
    return bits;
}

Vec awgn(Eigen::Index len, const NoiseSpec& noise, Rng& rng) {
    Vec out(len);
    const double sd = std::sqrt(noise.per_real_dim());
    for (Eigen::Index i = 0; i < len; ++i) out(i) = sd == 0.0 ? 0.0 : rng.next_gaussian(0.0, sd);
    return out;
}

NoiseSpec snr_to_noise_var(double snr_db, double p_s, double gain) {
    if (!(gain > 0.0)) throw ParameterError("snr_to_noise_var: gain must be positive");
    return NoiseSpec{p_s * gain / std::pow(10.0, snr_db / 10.0)};
}

std::size_t count_bit_errors(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size()) throw DimensionError("count_bit_errors: length mismatch");
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += (a[i] ^ b[i]) & 1;
    return n;
}

BitVec random_bits(std::size_t n, Rng& rng) {
    BitVec bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<uint8_t>(rng.next_u32() & 1);
    return bits;
}

}  // namespace mcadet
