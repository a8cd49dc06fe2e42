#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "encmatch/bfv/modarith.hpp"
#include "encmatch/bfv/ntt.hpp"

namespace encmatch::bfv {

/// Coefficients of an element of Z_q[x]/(x^n + 1), each in [0, q).
using Poly = std::vector<std::uint64_t>;

/// Arithmetic in Z_q[x]/(x^n + 1). Multiplication goes through the NTT when
/// q is NTT-friendly for n and falls back to schoolbook otherwise.
class RingContext {
 public:
  RingContext(std::size_t n, std::uint64_t q);

  std::size_t degree() const noexcept { return n_; }
  const Modulus& modulus() const noexcept { return q_; }
  bool has_ntt() const noexcept { return ntt_.has_value(); }

  Poly zero() const { return Poly(n_, 0); }
  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly negate(const Poly& a) const;
  Poly scale(const Poly& a, std::uint64_t scalar) const;
  Poly multiply(const Poly& a, const Poly& b) const;
  Poly multiply_schoolbook(const Poly& a, const Poly& b) const;

  /// Lifts signed coefficients into [0, q).
  Poly from_signed(std::span<const std::int64_t> coeffs) const;
  /// Centred representatives in (-q/2, q/2].
  std::vector<std::int64_t> centered(const Poly& a) const;
  /// max |centred coefficient|.
  std::uint64_t infinity_norm(const Poly& a) const;

 private:
  void check(const Poly& a) const;

  std::size_t n_;
  Modulus q_;
  std::optional<NegacyclicNtt> ntt_;
};

/// Exact negacyclic product over Z[x]/(x^n + 1) of signed polynomials.
/// Computed modulo two 50-bit NTT primes and recombined by CRT, so it is
/// exact while every output coefficient stays below 2^98 in magnitude.
class ExactNegacyclicProduct {
 public:
  explicit ExactNegacyclicProduct(std::size_t n);

  /// Largest |coefficient| of an output that is guaranteed exact.
  static constexpr int kExactBits = 98;

  std::vector<i128> multiply(std::span<const std::int64_t> a, std::span<const std::int64_t> b) const;

 private:
  NegacyclicNtt p1_;
  NegacyclicNtt p2_;
  std::uint64_t p1_inv_mod_p2_;
};

}  // namespace encmatch::bfv
