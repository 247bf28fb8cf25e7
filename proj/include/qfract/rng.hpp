#pragma once

#include <cstdint>

#include "qfract/vec3.hpp"

namespace qfract {

// splitmix64 (Steele, Lea, Flood 2014). Used only to expand seeds.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  uint64_t state_;
};

// xoshiro256++ (Blackman, Vigna 2019) with per-chain substreams: the state is
// expanded by splitmix64 from seed XOR mix(stream), so distinct (seed, stream)
// pairs give independent sequences and identical pairs reproduce bit-exactly.
// The algorithm identifier below is recorded in run manifests.
class Xoshiro256PlusPlus {
 public:
  static constexpr const char* kAlgorithmId = "xoshiro256++/splitmix64-stream/v1";

  explicit Xoshiro256PlusPlus(uint64_t seed, uint64_t stream = 0) {
    SplitMix64 sm(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
    for (auto& s : s_) s = sm.next();
  }

  uint64_t next() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0,1) with 53 random bits.
  double next_double() { return double(next() >> 11) * 0x1.0p-53; }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

// Uniform direction on S^2 (area measure): z uniform in [-1,1], longitude
// uniform in [0,2pi). Consumes exactly two variates.
inline UnitVector3 random_unit_vector(Xoshiro256PlusPlus& rng) {
  const double z = 1.0 - 2.0 * rng.next_double();
  const double phi = 2.0 * 3.141592653589793238462643383279502884 * rng.next_double();
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return UnitVector3::normalized(s * std::cos(phi), s * std::sin(phi), z);
}

}  // namespace qfract
