#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace pihash {

namespace detail {

// splitmix64 finalizer (Steele, Lea & Flood / Vigna reference constants).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

} // namespace detail

// xorshift64* (Marsaglia shifts 12/25/27, Vigna multiplier). State is seeded
// through splitmix64 so any 64-bit seed, including 0, yields a usable stream.
// Identical seeds produce identical streams on any platform with IEEE doubles.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed)
        : state_(detail::splitmix64(seed)) {
        if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
    }

    std::uint64_t next_u64() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1DULL;
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; consumes two uniforms per call.
    double normal() {
        const double u1 = 1.0 - uniform01(); // (0, 1], keeps log finite
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    std::uint64_t state_;
};

// Deterministic seed derivation for per-attack / per-record streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t s = detail::splitmix64(seed ^ detail::fnv1a64(tag));
    s = detail::splitmix64(s ^ a);
    return detail::splitmix64(s ^ b);
}

} // namespace pihash
