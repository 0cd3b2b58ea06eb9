#ifndef BURRWEIBULL_RANDOM_HPP
#define BURRWEIBULL_RANDOM_HPP

#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "params.hpp"
#include "quantile.hpp"

// Counter-based uniform generator and inverse-transform sampling. Output i
// depends only on (seed, stream_id, i): streams can be split per replicate
// and elements generated in any order, on any thread, with identical bits.

namespace bw {

struct SeededStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

namespace detail {

constexpr std::uint64_t golden64 = 0x9E3779B97F4A7C15ull;

// SplitMix64 output stage.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace detail

class CounterRng {
public:
    explicit CounterRng(SeededStream s)
        : key_(detail::mix64(s.seed ^ (s.stream_id * detail::golden64))) {}

    std::uint64_t bits_at(std::uint64_t i) const {
        return detail::mix64(key_ + (i + 1) * detail::golden64);
    }

    // Uniform in the open interval (0, 1): 53-bit mantissa, never 0 or 1.
    double uniform_at(std::uint64_t i) const {
        return static_cast<double>(bits_at(i) >> 11) * 0x1.0p-53 + 0x1.0p-54;
    }

    double next_uniform() { return uniform_at(counter_++); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// n variates by quantile(p, U_i), U_i from the stream. Element i of the
// result is a pure function of (p, stream, i).
inline std::vector<double> sample(const BwParams& p, std::size_t n, SeededStream stream) {
    if (n == 0) {
        throw DomainError("sample size must be at least 1");
    }
    const CounterRng rng(stream);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = quantile(p, rng.uniform_at(i));
    }
    return out;
}

} // namespace bw

#endif
