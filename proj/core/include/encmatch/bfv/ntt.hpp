#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "encmatch/bfv/modarith.hpp"

namespace encmatch::bfv {

/// Negacyclic number-theoretic transform over Z_q[x]/(x^n + 1).
///
/// Requires n a power of two and q a prime with q = 1 (mod 2n), so that a
/// primitive 2n-th root of unity psi exists. Forward is Cooley-Tukey with
/// bit-reversed psi powers folded in; inverse is Gentleman-Sande. Output of
/// forward() is in bit-reversed order, which pointwise products ignore.
class NegacyclicNtt {
 public:
  NegacyclicNtt(std::size_t n, std::uint64_t q);

  static bool supports(std::size_t n, std::uint64_t q);

  std::size_t size() const noexcept { return n_; }
  const Modulus& modulus() const noexcept { return q_; }
  std::uint64_t root() const noexcept { return psi_; }

  void forward(std::span<std::uint64_t> a) const;
  void inverse(std::span<std::uint64_t> a) const;

  /// Negacyclic product of two reduced polynomials.
  std::vector<std::uint64_t> multiply(std::span<const std::uint64_t> a,
                                      std::span<const std::uint64_t> b) const;

 private:
  std::size_t n_;
  Modulus q_;
  std::uint64_t psi_ = 0;
  std::uint64_t n_inv_ = 0;
  std::vector<std::uint64_t> psi_rev_;
  std::vector<std::uint64_t> psi_inv_rev_;
};

}  // namespace encmatch::bfv
