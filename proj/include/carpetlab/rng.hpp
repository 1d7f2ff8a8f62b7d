#ifndef CARPETLAB_RNG_HPP
#define CARPETLAB_RNG_HPP

#include <cstdint>

namespace carpetlab {

// Counter-based generator: each (seed, stream) pair yields an independent,
// reproducible sequence regardless of scheduling, so Monte Carlo paths can
// be farmed out by index. Core mixer is SplitMix64.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : state_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in {0, ..., n-1} without modulo bias worth caring about here.
    std::uint32_t next_below(std::uint32_t n) {
        return static_cast<std::uint32_t>(next_double() * n);
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }
    std::uint64_t state_;
};

}  // namespace carpetlab

#endif
