#pragma once

#include <cmath>
#include <cstdint>

namespace capmotion {

// Counter-style random streams: a (seed, stream) pair defines an independent
// generator, so work item k can draw from stream k regardless of which worker
// executes it. Runs are then reproducible for any worker count.
namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

class SeededStream {
 public:
  SeededStream(std::uint64_t seed, std::uint64_t stream) {
    // Decorrelate the stream index from the seed before mixing them.
    std::uint64_t s = seed;
    std::uint64_t a = detail::splitmix64(s);
    s = stream ^ 0x6a09e667f3bcc909ULL;
    std::uint64_t b = detail::splitmix64(s);
    state_ = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  }

  std::uint64_t next_u64() { return detail::splitmix64(state_); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, 2*pi).
  double next_angle() { return next_double() * 6.283185307179586476925286766559; }

  // +1 or -1 with equal probability.
  int next_sign() { return (next_u64() & 1u) ? 1 : -1; }

  // Uniform integer in [0, bound) via rejection-free scaling (bound << 2^64).
  std::uint64_t next_below(std::uint64_t bound) {
    // 128-bit multiply-shift keeps the draw unbiased enough for Monte Carlo
    // use (bias < bound / 2^64).
    unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * bound;
    return static_cast<std::uint64_t>(wide >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace capmotion
