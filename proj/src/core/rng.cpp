#include "blab/core/rng.hpp"

#include <cmath>
#include <numbers>

namespace blab {

// SplitMix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
    return mix64(mix64(seed_ ^ mix64(stream_ + 0x632BE59BD9B4E019ULL)) + counter);
}

double CounterRng::uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t counter) const {
    const double u1 = 1.0 - uniform(2 * counter);  // (0,1]
    const double u2 = uniform(2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

CounterRng CounterRng::substream(std::uint64_t s) const { return CounterRng(seed_, mix64(stream_ * 31 + s + 1)); }

}  // namespace blab
