#pragma once

#include <cstdint>
#include <string_view>

namespace gtscore {

/// xoshiro256** seeded through SplitMix64.
///
/// Every derived quantity is defined from next_u64() alone so a seed
/// reproduces bit-identically in any language:
///   uniform01()         (x >> 11) * 2^-53, in [0, 1)
///   uniform_int(lo, hi) rejection sampling on x % span, unbiased
///   uniform_real(a, b)  a + (b - a) * uniform01()
///   normal()            Marsaglia polar method, second variate discarded
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();
    double uniform01();
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
    double uniform_real(double lo, double hi);
    double normal();

private:
    std::uint64_t s_[4];
};

/// SplitMix64 step: advances `state` and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state);

/// Stateless SplitMix64 finalizer of (x + golden gamma).
std::uint64_t mix64(std::uint64_t x);

/// FNV-1a 64-bit hash, used to fold text keys into seeds.
std::uint64_t fnv1a64(std::string_view text);

}  // namespace gtscore
