#pragma once

#include <cstdint>

namespace encmatch::bfv {

__extension__ using u128 = unsigned __int128;
__extension__ using i128 = __int128;

/// Arithmetic modulo a fixed 64-bit modulus (< 2^63).
class Modulus {
 public:
  Modulus() = default;
  explicit Modulus(std::uint64_t value);

  std::uint64_t value() const noexcept { return value_; }

  std::uint64_t reduce(std::uint64_t a) const noexcept { return a % value_; }
  /// Reduces a signed value into [0, q).
  std::uint64_t reduce_signed(std::int64_t a) const noexcept;
  std::uint64_t reduce_wide(i128 a) const noexcept;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
    const std::uint64_t s = a + b;
    return s >= value_ ? s - value_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
    return a >= b ? a - b : a + value_ - b;
  }
  std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : value_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % value_);
  }
  std::uint64_t pow(std::uint64_t base, std::uint64_t exponent) const noexcept;
  /// Inverse for prime moduli (Fermat).
  std::uint64_t inv(std::uint64_t a) const;

  /// Representative in (-q/2, q/2].
  std::int64_t center(std::uint64_t a) const noexcept {
    return a > value_ / 2 ? static_cast<std::int64_t>(a) - static_cast<std::int64_t>(value_)
                          : static_cast<std::int64_t>(a);
  }

 private:
  std::uint64_t value_ = 2;
};

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

}  // namespace encmatch::bfv
