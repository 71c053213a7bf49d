#pragma once

#include <cmath>
#include <cstdint>

namespace sgcov::mc {

// xoshiro256++ seeded through splitmix64; self-contained so that streams are
// bit-reproducible across platforms and standard libraries.
class RngStream {
public:
    explicit RngStream(uint64_t seed) {
        uint64_t x = seed;
        for (auto& w : state_) w = splitmix64(x);
    }

    // independent stream for (seed, batch) pairs
    static RngStream for_batch(uint64_t seed, uint64_t batch) {
        uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL + batch * 0xbf58476d1ce4e5b9ULL);
        return RngStream(splitmix64(x));
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform on [0,1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // unit-mean exponential
    double next_exp() { return -std::log1p(-next_double()); }

    double next_rayleigh(double sigma) { return sigma * std::sqrt(-2.0 * std::log1p(-next_double())); }

    // exact Poisson; large means are split into <= 40-mean chunks (Knuth)
    long next_poisson(double mu) {
        long total = 0;
        while (mu > 40.0) {
            total += knuth_poisson(40.0);
            mu -= 40.0;
        }
        return total + knuth_poisson(mu);
    }

    // uniform point in the disk of radius R around (cx, cy), by rejection
    void next_in_disk(double R, double cx, double cy, double& x, double& y) {
        double u, v;
        do {
            u = 2.0 * next_double() - 1.0;
            v = 2.0 * next_double() - 1.0;
        } while (u * u + v * v > 1.0);
        x = cx + R * u;
        y = cy + R * v;
    }

private:
    static uint64_t splitmix64(uint64_t& x) {
        uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    long knuth_poisson(double mu) {
        const double limit = std::exp(-mu);
        long k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= next_double();
        } while (p > limit);
        return k - 1;
    }

    uint64_t state_[4];
};

}  // namespace sgcov::mc
