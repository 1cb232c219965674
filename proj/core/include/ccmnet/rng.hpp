#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace ccmnet {

// All randomness in the project flows through this wrapper so that output
// manifests can record a single algorithm identifier and every stream is
// replayable from a 64-bit seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  std::uint64_t uniform_below(std::uint64_t n) {
    // Rejection-free would bias for huge n; n here is always << 2^53.
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
  }

  std::uint64_t raw() { return engine_(); }

  static std::string algorithm_id() { return "splitmix64-derive+mt19937_64"; }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 output mixer; used for seed derivation only.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream purposes keep the per-realization streams statistically independent
// even when the (set, net) indices coincide.
enum class StreamPurpose : std::uint64_t {
  Profile = 1,
  InitialWealth = 2,
  Equilibration = 3,
  Growth = 4,
};

// Deterministic child-seed derivation from (master, set, net, purpose).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t set_index,
                                 std::uint64_t net_index, StreamPurpose purpose) {
  std::uint64_t s = mix64(master);
  s = mix64(s ^ mix64(set_index + 0x632be59bd9b4e019ULL));
  s = mix64(s ^ mix64(net_index + 0xe220a8397b1dcdafULL));
  s = mix64(s ^ static_cast<std::uint64_t>(purpose));
  return s;
}

}  // namespace ccmnet
