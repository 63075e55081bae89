#pragma once

#include <cstdint>

namespace testsupport
{

// Small deterministic generator for property-style sweeps.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next()
    {
        state_ ^= state_ << 13;
        state_ ^= state_ >> 7;
        state_ ^= state_ << 17;
        return state_;
    }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi)
    {
        const double unit = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * unit;
    }

private:
    std::uint64_t state_;
};

} // namespace testsupport
