#pragma once

#include <cstdint>
#include <random>

namespace tindb {

// Deterministic random source. mt19937_64 has a fully specified sequence
// and the uniform mappings below avoid the implementation-defined
// std::uniform_*_distribution, so identical seeds produce identical values
// on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 bits of mantissa.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t uniform_index(std::uint64_t bound) {
        // Multiply-shift mapping; bias is negligible for bound << 2^64.
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(engine_()) * bound) >> 64);
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace tindb
