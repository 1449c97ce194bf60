#pragma once

#include <cmath>
#include <cstdint>

namespace sgbench {

// splitmix64: seed scrambler used to derive independent streams.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// PCG32 (XSH-RR). The output sequence is a pure function of (seed, stream)
// on every platform; the standard library distributions are not, which is
// why bounded draws are implemented here as well.
class Pcg32 {
public:
    Pcg32() { reseed(0x853c49e6748fea9bULL, 0xda3e39cb94b95bdbULL); }
    explicit Pcg32(uint64_t seed, uint64_t stream = 0) { reseed(seed, stream); }

    void reseed(uint64_t seed, uint64_t stream) {
        state_ = 0;
        inc_ = (stream << 1u) | 1u;
        next_u32();
        state_ += seed;
        next_u32();
    }

    uint32_t next_u32() {
        uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        uint32_t xorshifted = static_cast<uint32_t>(((old >> 18u) ^ old) >> 27u);
        uint32_t rot = static_cast<uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    uint64_t next_u64() {
        uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    // Unbiased draw from [0, bound). Lemire's multiply-shift with rejection.
    uint32_t below(uint32_t bound) {
        uint64_t m = static_cast<uint64_t>(next_u32()) * bound;
        auto low = static_cast<uint32_t>(m);
        if (low < bound) {
            uint32_t threshold = (0u - bound) % bound;
            while (low < threshold) {
                m = static_cast<uint64_t>(next_u32()) * bound;
                low = static_cast<uint32_t>(m);
            }
        }
        return static_cast<uint32_t>(m >> 32);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller (one value per call; no cached spare,
    // keeps the stream position a simple function of the call count).
    double normal();

private:
    uint64_t state_ = 0;
    uint64_t inc_ = 0;
};

inline double Pcg32::normal() {
    // u1 in (0,1] so log() is finite.
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

// Derives the RNG stream for one unit of work from (seed, lane, index).
// Work item k always sees the same stream no matter which worker runs it
// or in which order, so generation parallelises without changing output.
inline Pcg32 derive_stream(uint64_t seed, uint64_t lane, uint64_t index) {
    uint64_t s = seed;
    uint64_t a = splitmix64(s);
    s ^= lane * 0x9e3779b97f4a7c15ULL;
    uint64_t b = splitmix64(s);
    s ^= index * 0xc2b2ae3d27d4eb4fULL;
    uint64_t c = splitmix64(s);
    return Pcg32(a ^ c, b + index);
}

}  // namespace sgbench
