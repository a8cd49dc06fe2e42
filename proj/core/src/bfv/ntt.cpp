#include "encmatch/bfv/ntt.hpp"

#include <bit>
#include <string>

#include "encmatch/errors.hpp"

namespace encmatch::bfv {

namespace {

std::size_t bit_reverse(std::size_t v, int bits) {
  std::size_t r = 0;
  for (int i = 0; i < bits; ++i) {
    r = (r << 1) | (v & 1);
    v >>= 1;
  }
  return r;
}

}  // namespace

bool NegacyclicNtt::supports(std::size_t n, std::uint64_t q) {
  if (n < 2 || !std::has_single_bit(n)) return false;
  if (q < 3 || q >= (std::uint64_t{1} << 62)) return false;
  return (q - 1) % (2 * n) == 0 && is_prime(q);
}

NegacyclicNtt::NegacyclicNtt(std::size_t n, std::uint64_t q) : n_(n), q_(q) {
  if (!supports(n, q)) {
    throw ValidationError("NTT needs n a power of two and prime q = 1 mod 2n (n=" +
                          std::to_string(n) + ", q=" + std::to_string(q) + ")");
  }
  // psi = g^((q-1)/2n) has order exactly 2n iff psi^n = -1.
  const std::uint64_t exponent = (q - 1) / (2 * n);
  for (std::uint64_t g = 2;; ++g) {
    const std::uint64_t candidate = q_.pow(g, exponent);
    if (q_.pow(candidate, n) == q - 1) {
      psi_ = candidate;
      break;
    }
  }

  const int bits = std::countr_zero(n);
  const std::uint64_t psi_inv = q_.inv(psi_);
  psi_rev_.resize(n);
  psi_inv_rev_.resize(n);
  std::uint64_t p = 1;
  std::uint64_t pi = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = bit_reverse(i, bits);
    psi_rev_[r] = p;
    psi_inv_rev_[r] = pi;
    p = q_.mul(p, psi_);
    pi = q_.mul(pi, psi_inv);
  }
  n_inv_ = q_.inv(n % q);
}

void NegacyclicNtt::forward(std::span<std::uint64_t> a) const {
  if (a.size() != n_) throw ValidationError("NTT: length mismatch");
  std::size_t t = n_;
  for (std::size_t m = 1; m < n_; m <<= 1) {
    t >>= 1;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j1 = 2 * i * t;
      const std::uint64_t s = psi_rev_[m + i];
      for (std::size_t j = j1; j < j1 + t; ++j) {
        const std::uint64_t u = a[j];
        const std::uint64_t v = q_.mul(a[j + t], s);
        a[j] = q_.add(u, v);
        a[j + t] = q_.sub(u, v);
      }
    }
  }
}

void NegacyclicNtt::inverse(std::span<std::uint64_t> a) const {
  if (a.size() != n_) throw ValidationError("NTT: length mismatch");
  std::size_t t = 1;
  for (std::size_t m = n_; m > 1; m >>= 1) {
    const std::size_t h = m / 2;
    std::size_t j1 = 0;
    for (std::size_t i = 0; i < h; ++i) {
      const std::uint64_t s = psi_inv_rev_[h + i];
      for (std::size_t j = j1; j < j1 + t; ++j) {
        const std::uint64_t u = a[j];
        const std::uint64_t v = a[j + t];
        a[j] = q_.add(u, v);
        a[j + t] = q_.mul(q_.sub(u, v), s);
      }
      j1 += 2 * t;
    }
    t <<= 1;
  }
  for (auto& x : a) x = q_.mul(x, n_inv_);
}

std::vector<std::uint64_t> NegacyclicNtt::multiply(std::span<const std::uint64_t> a,
                                                   std::span<const std::uint64_t> b) const {
  std::vector<std::uint64_t> fa(a.begin(), a.end());
  std::vector<std::uint64_t> fb(b.begin(), b.end());
  forward(fa);
  forward(fb);
  for (std::size_t i = 0; i < n_; ++i) fa[i] = q_.mul(fa[i], fb[i]);
  inverse(fa);
  return fa;
}

}  // namespace encmatch::bfv
