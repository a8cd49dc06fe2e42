#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace encmatch {

/// splitmix64 finalizer; used to derive independent per-item seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for stream `stream` under `master`, independent of generation order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

/// std::mt19937_64 with hand-written, platform-independent distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound). bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Uniform in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform01();

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Standard normal via Box-Muller.
  double normal();

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

/// FNV-1a 64-bit hash, used for artifact fingerprints.
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes,
                      std::uint64_t basis = 0xcbf29ce484222325ULL) noexcept;

}  // namespace encmatch
