#pragma once

// Textbook BFV over R_q = Z_q[x]/(x^n + 1) with plaintext space R_t.
//
//   keygen:   s ternary, a uniform, e small;  pk = ([-(a*s + e)]_q, a)
//   encrypt:  c = (pk0*u + e1 + D*m, pk1*u + e2),  D = floor(q/t)
//   decrypt:  m = round(t/q * [c0 + c1*s (+ c2*s^2)]_q) mod t
//   multiply: round(t/q * (c x d)) on centred lifts, giving a degree-2 result
//   relin v1: c2 split into base-T digits, folded back with
//             rlk_i = ([-(a_i*s + e_i) + T^i * s^2]_q, a_i)
//
// Noise diagnostic: with x = [c(s)]_q, the budget in bits is
// log2(q / (2*||[t*x]_q||)).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "encmatch/bfv/ring.hpp"
#include "encmatch/rng.hpp"

namespace encmatch::bfv {

struct BfvParams {
  std::size_t ring_dimension = 1024;
  /// 40-bit prime, = 1 (mod 2048), so the default ring has an NTT.
  std::uint64_t ciphertext_modulus = 1099511592961ULL;
  std::uint64_t plaintext_modulus = 257;
  std::uint64_t relin_base = 256;
  /// Centred-binomial parameter; error coefficients lie in [-eta, eta].
  std::uint32_t noise_eta = 4;

  std::uint64_t scaling_factor() const { return ciphertext_modulus / plaintext_modulus; }
  /// Number of base-T digits needed to cover [0, q).
  std::size_t relin_digits() const;
  /// Throws ValidationError on an unusable parameter set.
  void validate() const;
  std::uint64_t fingerprint() const;

  friend bool operator==(const BfvParams&, const BfvParams&) = default;
};

/// Immutable, shareable evaluation context for one parameter set.
class BfvContext {
 public:
  explicit BfvContext(const BfvParams& params);

  const BfvParams& params() const noexcept { return params_; }
  const RingContext& ring() const noexcept { return ring_; }
  const ExactNegacyclicProduct& exact() const noexcept { return exact_; }
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

 private:
  BfvParams params_;
  RingContext ring_;
  ExactNegacyclicProduct exact_;
  std::uint64_t fingerprint_;
};

struct Plaintext {
  /// n coefficients in [0, t).
  std::vector<std::uint64_t> coeffs;

  friend bool operator==(const Plaintext&, const Plaintext&) = default;
};

struct SecretKey {
  Poly s;
};

struct PublicKey {
  Poly p0;
  Poly p1;
};

struct RelinKey {
  /// One (b_i, a_i) pair per base-T digit.
  std::vector<std::pair<Poly, Poly>> digits;
};

struct KeyTriple {
  SecretKey secret;
  PublicKey pub;
  RelinKey relin;
};

struct Ciphertext {
  /// Two polynomials when fresh or relinearized, three after multiply().
  std::vector<Poly> polys;
  std::uint64_t params_fingerprint = 0;

  std::size_t degree() const noexcept { return polys.empty() ? 0 : polys.size() - 1; }

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

/// Deterministic in `seed`.
KeyTriple keygen(const BfvContext& ctx, std::uint64_t seed);

/// Validates coefficient count and range.
void check_plaintext(const BfvContext& ctx, const Plaintext& m);

Ciphertext encrypt(const BfvContext& ctx, const PublicKey& pk, const Plaintext& m, std::uint64_t seed);

/// (D*m, 0): a valid encryption with no noise beyond the rounding of D.
Ciphertext encrypt_noiseless(const BfvContext& ctx, const Plaintext& m);

Plaintext decrypt(const BfvContext& ctx, const SecretKey& sk, const Ciphertext& c);

Ciphertext add(const BfvContext& ctx, const Ciphertext& a, const Ciphertext& b);

/// Degree-1 inputs only; returns a degree-2 ciphertext.
Ciphertext multiply(const BfvContext& ctx, const Ciphertext& a, const Ciphertext& b);

Ciphertext relinearize(const BfvContext& ctx, const RelinKey& rlk, const Ciphertext& c);

/// max |[t * c(s)]_q|, the invariant noise scaled by q.
std::uint64_t noise_norm(const BfvContext& ctx, const SecretKey& sk, const Ciphertext& c);

/// Remaining bits before decryption fails; 0 means decryption is unreliable.
/// A zero noise norm is treated as 1.
double noise_budget(const BfvContext& ctx, const SecretKey& sk, const Ciphertext& c);

/// Budget below which a decryption must not be trusted.
inline constexpr double kMinReliableBudget = 1.0;

inline bool decryption_reliable(double budget_bits) { return budget_bits >= kMinReliableBudget; }

/// Samples used by keygen/encrypt, exposed for tests and tooling.
Poly sample_ternary(const RingContext& ring, Rng& rng);
Poly sample_uniform(const RingContext& ring, Rng& rng);
Poly sample_noise(const RingContext& ring, Rng& rng, std::uint32_t eta);

}  // namespace encmatch::bfv
