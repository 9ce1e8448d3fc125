#ifndef POLYLAB_RNG_HPP
#define POLYLAB_RNG_HPP

#include <cstdint>

namespace polylab {

// Counter-indexed random stream: the per-sample generator is seeded by mixing
// seed and stream index through the splitmix64 finalizer, so any (seed,
// index) pair yields the same words no matter which thread draws them.
class RngStream {
public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix(std::uint64_t x) {
        x ^= x >> 30;
        x *= 0xBF58476D1CE4E5B9ULL;
        x ^= x >> 27;
        x *= 0x94D049BB133111EBULL;
        x ^= x >> 31;
        return x;
    }

    RngStream(std::uint64_t seed, std::uint64_t index) : state_(mix(seed + index * kGamma)) {}

    std::uint64_t next() {
        state_ += kGamma;
        return mix(state_);
    }

    // Uniform in [0, bound).
    std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

}  // namespace polylab

#endif
