#pragma once

#include <cstdint>

namespace blab {

// Counter-based generator: the value at (stream, counter) depends only on the
// seed and those two integers, so parallel consumers can draw independently
// without sharing state.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

    std::uint64_t bits(std::uint64_t counter) const;
    // uniform on [0,1) with 53 random bits
    double uniform(std::uint64_t counter) const;
    double uniform(std::uint64_t counter, double lo, double hi) const { return lo + (hi - lo) * uniform(counter); }
    // standard normal by Box-Muller from counters 2c and 2c+1
    double normal(std::uint64_t counter) const;

    CounterRng substream(std::uint64_t s) const;

    // sequential convenience wrapper
    double next_uniform() { return uniform(pos_++); }
    double next_uniform(double lo, double hi) { return uniform(pos_++, lo, hi); }
    double next_normal() { return normal(pos_++); }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t pos_ = 0;
};

std::uint64_t mix64(std::uint64_t z);

}  // namespace blab
