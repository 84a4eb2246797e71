#pragma once

#include <cstdint>

#include "whisper/units.hpp"

namespace whisper {

// Seedable, splittable PRNG: xoshiro256** seeded through splitmix64.
// Substreams are derived from (seed, a, b, c) keys so that each
// (repetition, flood, node) triple gets an independent stream; adding nodes
// or floods never perturbs the draws of existing ones. Distributions are
// hand-rolled from raw bits to stay identical across standard libraries.
class Rng {
 public:
  static Rng from_key(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0,
                      std::uint64_t c = 0) {
    std::uint64_t x = seed;
    x = splitmix(x ^ (0x9e3779b97f4a7c15ULL * (a + 1)));
    x = splitmix(x ^ (0xbf58476d1ce4e5b9ULL * (b + 1)));
    x = splitmix(x ^ (0x94d049bb133111ebULL * (c + 1)));
    Rng r;
    for (auto& s : r.s_) {
      x += 0x9e3779b97f4a7c15ULL;
      s = splitmix(x);
    }
    return r;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  // Uniform integer in [lo, hi], inclusive.
  ns_t uniform_ns(ns_t lo, ns_t hi) {
    if (hi <= lo) return lo;
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<ns_t>(next_u64() % span);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t s_[4] = {};
};

}  // namespace whisper
