#pragma once

#include <cstdint>
#include <initializer_list>

namespace gols {

/// SplitMix64 output finalizer (Steele, Lea & Flood).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Sub-stream derivation: child = mix64(mix64(parent) ^ (id * C1 + C2)).
/// Every random quantity in the library is reached from a root seed by a
/// chain of derive_seed calls, so a trial is reproducible from
/// (master seed, cell, trial index) alone.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t id) noexcept {
  return mix64(mix64(parent) ^ (id * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t parent,
                                    std::initializer_list<std::uint64_t> path) noexcept {
  for (auto id : path) parent = derive_seed(parent, id);
  return parent;
}

/// Stream ids used by problem generation.
enum class Stream : std::uint64_t { Matrix = 0, Support = 1, Nonzeros = 2, Noise = 3 };

constexpr std::uint64_t derive_seed(std::uint64_t parent, Stream s) noexcept {
  return derive_seed(parent, static_cast<std::uint64_t>(s));
}

/// Counter-based SplitMix64 stream: the i-th output is mix64(key + i * gamma).
/// Samplers below are written out by hand so results do not depend on the
/// standard library's distribution implementations.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGamma);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double next_uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound), unbiased by rejection. bound > 0.
  std::uint64_t next_below(std::uint64_t bound) noexcept;

  /// Standard normal via Box-Muller; the second variate of each pair is cached.
  double next_normal() noexcept;

  /// +1 or -1 with equal probability.
  double next_sign() noexcept { return (next_u64() >> 63) ? 1.0 : -1.0; }

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace gols
