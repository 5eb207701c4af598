#pragma once

#include <cmath>
#include <cstdint>

namespace opord {

// Deterministic random generator used everywhere randomness is needed, so
// that a run is reproducible from its seed alone.  State initialisation is
// splitmix64 (Steele/Lea/Flood mixing constants); the stream itself is
// xoshiro256++ (Blackman/Vigna).  Both are published, portable algorithms
// with exact 64-bit integer semantics; doubles are derived from the top 53
// bits, so identical seeds give identical draws on any conforming platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        // splitmix64: decorrelates consecutive seeds into full 256-bit state.
        std::uint64_t x = seed;
        for (auto& word : s_) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Log-uniform in [lo, hi), lo > 0.  Natural for eigenvalue spreads.
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    // Uniform integer in [lo, hi] inclusive.  Modulo bias is below 2^-50 for
    // the tiny ranges used here.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<int>(next_u64() % span);
    }

    // Standard normal via the Marsaglia polar method (rejection on uniforms,
    // deterministic given the stream).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, q;
        do {
            u = uniform(-1.0, 1.0);
            v = uniform(-1.0, 1.0);
            q = u * u + v * v;
        } while (q >= 1.0 || q == 0.0);
        const double f = std::sqrt(-2.0 * std::log(q) / q);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    // Derive an independent child seed; used to give each trial its own
    // stream so trial order never matters.
    std::uint64_t fork_seed() { return next_u64(); }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4] = {};
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace opord
