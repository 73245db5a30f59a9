#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace mcadet {

// Philox4x32-10 counter-based generator. Streams are cheap to derive, so
// every (grid point, redraw, trial, purpose) tuple gets its own stream and
// results do not depend on execution order.
namespace philox {

constexpr uint32_t kMul0 = 0xD2511F53u;
constexpr uint32_t kMul1 = 0xCD9E8D57u;
constexpr uint32_t kWeyl0 = 0x9E3779B9u;
constexpr uint32_t kWeyl1 = 0xBB67AE85u;

inline std::array<uint32_t, 4> block(uint64_t key, const std::array<uint32_t, 4>& ctr) {
    uint32_t k0 = static_cast<uint32_t>(key);
    uint32_t k1 = static_cast<uint32_t>(key >> 32);
    std::array<uint32_t, 4> x = ctr;
    for (int round = 0; round < 10; ++round) {
        uint64_t p0 = static_cast<uint64_t>(kMul0) * x[0];
        uint64_t p1 = static_cast<uint64_t>(kMul1) * x[2];
        uint32_t h0 = static_cast<uint32_t>(p0 >> 32), l0 = static_cast<uint32_t>(p0);
        uint32_t h1 = static_cast<uint32_t>(p1 >> 32), l1 = static_cast<uint32_t>(p1);
        x = {h1 ^ x[1] ^ k0, l1, h0 ^ x[3] ^ k1, l0};
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return x;
}

}  // namespace philox

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Derives a 64-bit stream id from up to three coordinates (grid point,
/// redraw/trial index, purpose tag). Order-sensitive by construction.
inline uint64_t derive_stream(uint64_t a, uint64_t b = 0, uint64_t c = 0) {
    uint64_t s = splitmix64(a);
    s = splitmix64(s ^ b);
    s = splitmix64(s ^ c);
    return s;
}

class Rng {
public:
    Rng(uint64_t seed, uint64_t stream) : key_(seed), stream_(stream) {}

    uint32_t next_u32() {
        if (pos_ == 4) {
            buf_ = philox::block(key_, {static_cast<uint32_t>(counter_),
                                        static_cast<uint32_t>(counter_ >> 32),
                                        static_cast<uint32_t>(stream_),
                                        static_cast<uint32_t>(stream_ >> 32)});
            ++counter_;
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    uint64_t next_u64() {
        uint64_t lo = next_u32();
        uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    /// Uniform on (0, 1]; never returns 0 so log() is safe.
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller, one value cached.
    double next_gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = next_unit();
        double u2 = next_unit();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    double next_gaussian(double mean, double stddev) { return mean + stddev * next_gaussian(); }

private:
    uint64_t key_;
    uint64_t stream_;
    uint64_t counter_ = 0;
    std::array<uint32_t, 4> buf_{};
    int pos_ = 4;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

}  // namespace mcadet
