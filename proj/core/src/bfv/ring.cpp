#include "encmatch/bfv/ring.hpp"

#include <algorithm>
#include <bit>

#include "encmatch/errors.hpp"

namespace encmatch::bfv {

namespace {

// Primes = 1 mod 2^17, supporting ring dimensions up to 2^16.
constexpr std::uint64_t kAuxPrime1 = 1125899903827969ULL;
constexpr std::uint64_t kAuxPrime2 = 1125899902124033ULL;

}  // namespace

RingContext::RingContext(std::size_t n, std::uint64_t q) : n_(n), q_(q) {
  if (n < 2 || !std::has_single_bit(n)) throw ValidationError("ring dimension must be a power of two >= 2");
  if (NegacyclicNtt::supports(n, q)) ntt_.emplace(n, q);
}

void RingContext::check(const Poly& a) const {
  if (a.size() != n_) throw ValidationError("polynomial has wrong length for this ring");
}

Poly RingContext::add(const Poly& a, const Poly& b) const {
  check(a);
  check(b);
  Poly r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = q_.add(a[i], b[i]);
  return r;
}

Poly RingContext::sub(const Poly& a, const Poly& b) const {
  check(a);
  check(b);
  Poly r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = q_.sub(a[i], b[i]);
  return r;
}

Poly RingContext::negate(const Poly& a) const {
  check(a);
  Poly r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = q_.neg(a[i]);
  return r;
}

Poly RingContext::scale(const Poly& a, std::uint64_t scalar) const {
  check(a);
  const std::uint64_t s = q_.reduce(scalar);
  Poly r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = q_.mul(a[i], s);
  return r;
}

Poly RingContext::multiply(const Poly& a, const Poly& b) const {
  check(a);
  check(b);
  if (ntt_) return ntt_->multiply(a, b);
  return multiply_schoolbook(a, b);
}

Poly RingContext::multiply_schoolbook(const Poly& a, const Poly& b) const {
  check(a);
  check(b);
  Poly r(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      const std::uint64_t p = q_.mul(a[i], b[j]);
      const std::size_t k = i + j;
      if (k < n_) {
        r[k] = q_.add(r[k], p);
      } else {
        r[k - n_] = q_.sub(r[k - n_], p);
      }
    }
  }
  return r;
}

Poly RingContext::from_signed(std::span<const std::int64_t> coeffs) const {
  if (coeffs.size() != n_) throw ValidationError("polynomial has wrong length for this ring");
  Poly r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = q_.reduce_signed(coeffs[i]);
  return r;
}

std::vector<std::int64_t> RingContext::centered(const Poly& a) const {
  check(a);
  std::vector<std::int64_t> r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = q_.center(a[i]);
  return r;
}

std::uint64_t RingContext::infinity_norm(const Poly& a) const {
  check(a);
  std::uint64_t norm = 0;
  for (const auto c : a) {
    const auto v = q_.center(c);
    norm = std::max(norm, static_cast<std::uint64_t>(v < 0 ? -v : v));
  }
  return norm;
}

ExactNegacyclicProduct::ExactNegacyclicProduct(std::size_t n)
    : p1_(n, kAuxPrime1), p2_(n, kAuxPrime2), p1_inv_mod_p2_(p2_.modulus().inv(kAuxPrime1 % kAuxPrime2)) {}

std::vector<i128> ExactNegacyclicProduct::multiply(std::span<const std::int64_t> a,
                                                   std::span<const std::int64_t> b) const {
  const std::size_t n = p1_.size();
  if (a.size() != n || b.size() != n) throw ValidationError("exact product: length mismatch");

  auto lift = [&](std::span<const std::int64_t> src, const Modulus& m) {
    std::vector<std::uint64_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = m.reduce_signed(src[i]);
    return out;
  };
  const auto r1 = p1_.multiply(lift(a, p1_.modulus()), lift(b, p1_.modulus()));
  const auto r2 = p2_.multiply(lift(a, p2_.modulus()), lift(b, p2_.modulus()));

  const Modulus& m2 = p2_.modulus();
  const u128 big = static_cast<u128>(kAuxPrime1) * kAuxPrime2;
  const u128 half = big / 2;
  std::vector<i128> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    // x = r1 + p1 * ((r2 - r1) * p1^-1 mod p2), in [0, p1*p2).
    const std::uint64_t k = m2.mul(m2.sub(r2[i], m2.reduce(r1[i])), p1_inv_mod_p2_);
    const u128 x = static_cast<u128>(r1[i]) + static_cast<u128>(kAuxPrime1) * k;
    out[i] = x > half ? -static_cast<i128>(big - x) : static_cast<i128>(x);
  }
  return out;
}

}  // namespace encmatch::bfv
