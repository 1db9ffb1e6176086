#pragma once

#include <cstdint>

namespace hardytree {

// Splitmix64 generator. Standard-library distributions are not required to be
// bit-identical across implementations, so seeded runs use this instead.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 significant bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe as a log() argument.
    double next_positive() { return 1.0 - next_double(); }

    // Decorrelated stream for substream `index` of a base seed.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
        Rng r(seed ^ (0x632be59bd9b4e019ULL + index * 0x9e3779b97f4a7c15ULL));
        return r.next_u64();
    }

private:
    std::uint64_t state_;
};

} // namespace hardytree
