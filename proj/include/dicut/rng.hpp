#pragma once

#include <cstdint>

namespace dicut {

// SplitMix64 sequence. Deterministic across platforms and builds.
class Substream {
 public:
  explicit Substream(std::uint64_t state) : state_(state) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_unit() < p; }

  // Uniform over {0, ..., k-1}; k >= 1.
  std::uint64_t below(std::uint64_t k) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * k) >> 64);
  }

  std::int64_t below_i(std::int64_t k) {
    return static_cast<std::int64_t>(below(static_cast<std::uint64_t>(k)));
  }

  double in_range(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

 private:
  std::uint64_t state_;
};

// Keyed substream factory. Every (purpose, position) pair owns an independent
// deterministic tape, so replaying a stream position replays its draws exactly.
class KeyedRng {
 public:
  explicit KeyedRng(std::uint64_t seed) : seed_(seed) {}

  Substream at(std::uint64_t purpose, std::uint64_t position) const {
    std::uint64_t h = mix(seed_ ^ mix(purpose + 0x632be59bd9b4e019ull));
    return Substream(mix(h ^ mix(position + 0x9e3779b97f4a7c15ull)));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
};

namespace rng_purpose {
inline constexpr std::uint64_t kPass1Vertex = 1;  // z-draws (copy sampling)
inline constexpr std::uint64_t kPass1EstDeg = 2;  // y-draws (degree estimation)
inline constexpr std::uint64_t kEdgeRounds = 3;   // per-edge d-round index draws
inline constexpr std::uint64_t kHash = 4;         // label hash sampling
inline constexpr std::uint64_t kReservoir = 5;    // core-set reservoir
inline constexpr std::uint64_t kGenerate = 6;     // instance generators
inline constexpr std::uint64_t kLocalSearch = 7;  // local-search restarts
inline constexpr std::uint64_t kPerturb = 8;      // approx-degree perturbation
}  // namespace rng_purpose

}  // namespace dicut
