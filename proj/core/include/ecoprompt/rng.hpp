#pragma once

#include <cstdint>

namespace ecoprompt {

/// PCG-XSH-RR 32-bit generator. Output is fully specified by (state, inc),
/// which makes it bit-exact across compilers and trivially serializable.
/// Bounded draws use rejection sampling so they never depend on a standard
/// library distribution implementation.
class Pcg32 {
 public:
  Pcg32() : Pcg32(0, 0) {}
  Pcg32(std::uint64_t seed, std::uint64_t stream) noexcept {
    inc_ = (stream << 1u) | 1u;
    state_ = 0;
    next_u32();
    state_ += seed;
    next_u32();
  }

  static Pcg32 from_raw(std::uint64_t state, std::uint64_t inc) noexcept {
    Pcg32 r;
    r.state_ = state;
    r.inc_ = inc;
    return r;
  }

  std::uint32_t next_u32() noexcept {
    const std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
  }

  /// Uniform in [0, bound). bound == 0 yields 0.
  std::uint32_t next_below(std::uint32_t bound) noexcept {
    if (bound == 0) return 0;
    const std::uint32_t threshold = (-bound) % bound;
    for (;;) {
      const std::uint32_t r = next_u32();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() noexcept {
    const std::uint64_t hi = next_u32() >> 5;  // 27 bits
    const std::uint64_t lo = next_u32() >> 6;  // 26 bits
    return static_cast<double>((hi << 26) | lo) * (1.0 / 9007199254740992.0);
  }

  std::uint64_t state() const noexcept { return state_; }
  std::uint64_t inc() const noexcept { return inc_; }

  bool operator==(const Pcg32&) const = default;

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 1;
};

/// Derives independent per-purpose seeds from one game seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace ecoprompt
