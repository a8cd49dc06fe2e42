#include "encmatch/bfv/modarith.hpp"

#include "encmatch/errors.hpp"

namespace encmatch::bfv {

Modulus::Modulus(std::uint64_t value) : value_(value) {
  if (value < 2 || value >= (std::uint64_t{1} << 63)) {
    throw ValidationError("modulus must be in [2, 2^63)");
  }
}

std::uint64_t Modulus::reduce_signed(std::int64_t a) const noexcept {
  const std::int64_t q = static_cast<std::int64_t>(value_);
  std::int64_t r = a % q;
  if (r < 0) r += q;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t Modulus::reduce_wide(i128 a) const noexcept {
  const i128 q = static_cast<i128>(value_);
  i128 r = a % q;
  if (r < 0) r += q;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t Modulus::pow(std::uint64_t base, std::uint64_t exponent) const noexcept {
  std::uint64_t result = 1 % value_;
  base %= value_;
  while (exponent > 0) {
    if (exponent & 1) result = mul(result, base);
    base = mul(base, base);
    exponent >>= 1;
  }
  return result;
}

std::uint64_t Modulus::inv(std::uint64_t a) const {
  if (a % value_ == 0) throw ValidationError("modular inverse of zero");
  return pow(a, value_ - 2);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (const std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
  };
  auto powmod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t acc = 1;
    b %= n;
    while (e > 0) {
      if (e & 1) acc = mulmod(acc, b);
      b = mulmod(b, b);
      e >>= 1;
    }
    return acc;
  };
  for (const std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace encmatch::bfv
