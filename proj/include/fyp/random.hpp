#ifndef FYP_RANDOM_HPP_
#define FYP_RANDOM_HPP_

// Deterministic stream RNG built on xoshiro256++ with splitmix64 seeding.
// A stream is identified by (seed, stream_id); derived streams obtained via
// split() are statistically independent of the parent and of each other, so
// per-path and per-cell work can be reordered or parallelized without
// changing any draw.

#include <cstdint>
#include <cmath>

namespace fyp {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t &state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id) {
    // Seed the state from both identifiers; splitmix64 guarantees a
    // full-period scramble even for adjacent seeds.
    std::uint64_t sm = seed ^ 0x6a09e667f3bcc909ull;
    std::uint64_t mixed = detail::splitmix64(sm);
    sm = mixed ^ stream_id;
    for (auto &w : s_) w = detail::splitmix64(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = detail::rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = detail::rotl(s_[3], 45);
    return result;
  }

  // Uniform on the open interval (0, 1): 53-bit mantissa offset by half an
  // ulp, so neither 0 nor 1 is ever returned and log(u) is always finite.
  double uniform() {
    return ((next_u64() >> 11) + 0.5) * 0x1p-53;
  }

  // Exponential with the given rate, by inversion.
  double exponential(double rate) {
    return -std::log(uniform()) / rate;
  }

  // Independent child stream; child_id keyed derivation makes the result
  // independent of how many siblings were split off before it.
  RandomStream split(std::uint64_t child_id) const {
    std::uint64_t sm = child_id ^ 0x9b97f4a7c15ull;
    const std::uint64_t scrambled = detail::splitmix64(sm);
    return RandomStream(seed_, stream_id_ ^ scrambled);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t s_[4];
};

}  // namespace fyp

#endif  // FYP_RANDOM_HPP_
