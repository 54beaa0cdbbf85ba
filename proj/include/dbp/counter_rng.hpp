#ifndef DBP_COUNTER_RNG_HPP
#define DBP_COUNTER_RNG_HPP

#include <cstdint>

namespace dbp {

// Counter-based random stream: a stateless mix of (seed, stream, counter,
// slot) to 64 bits. Parallel consumers index the same sequence, so results
// are reproducible and schedule-independent.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t counter_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                                 std::uint64_t slot) {
    std::uint64_t h = mix64(seed ^ 0x243f6a8885a308d3ULL);
    h = mix64(h ^ stream);
    h = mix64(h ^ counter);
    h = mix64(h ^ slot);
    return h;
}

// Uniform double in [-1, 1).
inline double counter_uniform_pm1(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                                  std::uint64_t slot) {
    std::uint64_t r = counter_rng(seed, stream, counter, slot) >> 11; // 53 bits
    return double(r) * (2.0 / 9007199254740992.0) - 1.0;
}

} // namespace dbp

#endif
