// deterministic random number generation with explicit stream handles
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace cyfar {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** seeded through splitmix64. Self-contained so that draws do
// not depend on the C++ library's distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
        have_gauss_ = false;
        gauss_cache_ = 0.0;
    }

    std::uint64_t u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// uniform in [0,1) with 53-bit resolution
    double uniform01() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// unbiased integer in [0, bound)
    std::uint64_t uniform_int(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v;
        do { v = u64(); } while (v >= limit);
        return v % bound;
    }

    int bit() { return static_cast<int>(u64() >> 63); }
    int sign() { return bit() ? 1 : -1; }

    /// standard normal, Box-Muller (cached pair)
    double gauss() {
        if (have_gauss_) {
            have_gauss_ = false;
            return gauss_cache_;
        }
        double u1 = 0.0;
        do { u1 = uniform01(); } while (u1 <= 0.0);
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        gauss_cache_ = r * std::sin(a);
        have_gauss_ = true;
        return r * std::cos(a);
    }

    /// circularly symmetric complex normal with E|z|^2 = 1
    std::complex<double> cgauss() {
        const double re = gauss();
        const double im = gauss();
        return {re * 0.70710678118654752440, im * 0.70710678118654752440};
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
    bool have_gauss_;
    double gauss_cache_;
};

/// stable per-trial seed from (base, point, trial)
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t point,
                                 std::uint64_t trial) {
    std::uint64_t st = base ^ 0x6a09e667f3bcc908ULL;
    splitmix64(st);
    st ^= point * 0xff51afd7ed558ccdULL;
    splitmix64(st);
    st ^= trial * 0xc4ceb9fe1a85ec53ULL;
    return splitmix64(st);
}

}  // namespace cyfar
