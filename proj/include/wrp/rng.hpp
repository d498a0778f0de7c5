#pragma once

#include <cstdint>
#include <random>

namespace wrp {

// Deterministic random source. mt19937_64 output is pinned by the standard
// and the derived draws below avoid std::uniform_int_distribution, whose
// results vary across standard libraries, so a seed reproduces the same
// stream everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound), bound >= 1, via 128-bit multiply-shift.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  // Uniform in [lo, hi] inclusive.
  std::uint64_t in_range(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  bool chance(double p) { return static_cast<double>(next()) * 0x1p-64 < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wrp
