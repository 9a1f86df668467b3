#pragma once

#include <cstdint>
#include <random>

namespace rgfbk {

// Seeded random stream.
//
// Wraps std::mt19937_64 but maps raw 64-bit outputs to bounded integers and
// normals with hand-rolled, fixed-consumption transforms, so that a given
// seed produces the same draw sequence on every platform and every call site
// consumes a predictable number of raw values (std::uniform_int_distribution
// and friends make no such guarantee).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Next raw 64-bit value.
  std::uint64_t next() { return gen_(); }

  // Uniform integer in [0, n). Consumes exactly one raw value
  // (multiply-shift; bias is O(n / 2^64), far below anything observable).
  int uniform_index(int n) {
    return static_cast<int>((static_cast<unsigned __int128>(next()) *
                             static_cast<unsigned __int128>(n)) >>
                            64);
  }

  // Uniform double in (0, 1]. One raw value.
  double uniform_pos() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Uniform double in [0, 1). One raw value.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Independent child stream. Derivation mixes the salt through splitmix64
  // so adjacent salts give uncorrelated seeds.
  Rng spawn(std::uint64_t salt) const {
    return Rng(splitmix64(seed_ + 0x9e3779b97f4a7c15ULL * (salt + 1)));
  }

  // One splitmix64 step, also used for deriving per-run seeds.
  static std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

private:
  std::mt19937_64 gen_;
  std::uint64_t seed_;
};

}  // namespace rgfbk
