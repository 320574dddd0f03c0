#include "bandgas/rng.hpp"

#include <cmath>

namespace bandgas {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
constexpr double kTwoPi = 6.28318530717958647692;
}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(splitmix64(seed) ^ splitmix64(stream + kGamma))) {}

std::uint64_t RngStream::next_u64() { return splitmix64(key_ + (++counter_) * kGamma); }

double RngStream::uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u = uniform(), v = uniform();
    double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(kTwoPi * v);
    has_spare_ = true;
    return r * std::cos(kTwoPi * v);
}

cplx RngStream::complex_normal(double variance) {
    double s = std::sqrt(0.5 * variance);
    double re = normal(), im = normal();
    return {s * re, s * im};
}

}  // namespace bandgas
