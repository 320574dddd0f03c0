#pragma once

#include <cstdint>

#include "bandgas/scaled.hpp"

namespace bandgas {

// SplitMix64 finalizer
std::uint64_t splitmix64(std::uint64_t x);

// Counter-based stream: draw i of stream s under seed k is splitmix64(key(k, s) + i * gamma).
// Streams with different indices never share a key, so results do not depend on how work is split.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();
    double uniform();       // (0, 1), 53 bits
    double normal();        // Box-Muller, both variates used
    cplx complex_normal(double variance);  // E|z|^2 = variance
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace bandgas
