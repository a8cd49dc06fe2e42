#include "encmatch/bfv/scheme.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "encmatch/errors.hpp"

namespace encmatch::bfv {

namespace {

int bit_length(std::uint64_t v) { return 64 - std::countl_zero(v); }

// floor(a / b) for b > 0.
i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

void check_same_params(const BfvContext& ctx, const Ciphertext& c) {
  if (c.params_fingerprint != ctx.fingerprint()) {
    throw ValidationError("ciphertext was produced under different BFV parameters");
  }
  if (c.polys.size() < 2 || c.polys.size() > 3) {
    throw ValidationError("ciphertext must hold 2 or 3 polynomials");
  }
  for (const auto& p : c.polys) {
    if (p.size() != ctx.params().ring_dimension) throw ValidationError("ciphertext polynomial has wrong length");
    for (const auto v : p) {
      if (v >= ctx.params().ciphertext_modulus) throw ValidationError("ciphertext coefficient not reduced mod q");
    }
  }
}

// c0 + c1*s + c2*s^2 in R_q.
Poly dot_secret(const BfvContext& ctx, const SecretKey& sk, const Ciphertext& c) {
  check_same_params(ctx, c);
  const auto& ring = ctx.ring();
  Poly acc = ring.add(c.polys[0], ring.multiply(c.polys[1], sk.s));
  if (c.polys.size() == 3) {
    acc = ring.add(acc, ring.multiply(c.polys[2], ring.multiply(sk.s, sk.s)));
  }
  return acc;
}

}  // namespace

std::size_t BfvParams::relin_digits() const {
  std::size_t digits = 0;
  u128 reach = 1;
  while (reach < ciphertext_modulus) {
    reach *= relin_base;
    ++digits;
  }
  return digits;
}

void BfvParams::validate() const {
  const std::size_t n = ring_dimension;
  if (n < 2 || n > (std::size_t{1} << 16) || !std::has_single_bit(n)) {
    throw ValidationError("ring dimension must be a power of two in [2, 65536]");
  }
  const std::uint64_t q = ciphertext_modulus;
  const std::uint64_t t = plaintext_modulus;
  if (q < 3 || q >= (std::uint64_t{1} << 62)) throw ValidationError("ciphertext modulus must be in [3, 2^62)");
  if (t < 2 || t >= q) throw ValidationError("plaintext modulus must satisfy 2 <= t < q");
  if (bit_length(t) > 28) throw ValidationError("plaintext modulus must fit in 28 bits");
  // Tensor products of centred lifts must stay exact in the CRT product.
  const int log_n = std::countr_zero(n);
  if (2 * (bit_length(q) - 1) + log_n + 1 >= ExactNegacyclicProduct::kExactBits) {
    throw ValidationError("ciphertext modulus too large for ring dimension " + std::to_string(n));
  }
  if (relin_base < 2) throw ValidationError("relinearization base must be >= 2");
  if (noise_eta < 1 || noise_eta > 32) throw ValidationError("noise eta must be in [1, 32]");
}

std::uint64_t BfvParams::fingerprint() const {
  const std::uint64_t fields[5] = {ring_dimension, ciphertext_modulus, plaintext_modulus, relin_base, noise_eta};
  return fnv1a64({reinterpret_cast<const std::uint8_t*>(fields), sizeof(fields)});
}

BfvContext::BfvContext(const BfvParams& params)
    : params_((params.validate(), params)),
      ring_(params.ring_dimension, params.ciphertext_modulus),
      exact_(params.ring_dimension),
      fingerprint_(params.fingerprint()) {}

Poly sample_ternary(const RingContext& ring, Rng& rng) {
  Poly p(ring.degree());
  for (auto& c : p) c = ring.modulus().reduce_signed(static_cast<std::int64_t>(rng.uniform_below(3)) - 1);
  return p;
}

Poly sample_uniform(const RingContext& ring, Rng& rng) {
  Poly p(ring.degree());
  for (auto& c : p) c = rng.uniform_below(ring.modulus().value());
  return p;
}

Poly sample_noise(const RingContext& ring, Rng& rng, std::uint32_t eta) {
  Poly p(ring.degree());
  for (auto& c : p) {
    // Centred binomial: popcount of eta bits minus popcount of eta bits.
    const std::uint64_t bits = rng.next();
    const std::uint64_t mask = (std::uint64_t{1} << eta) - 1;
    const int v = std::popcount(bits & mask) - std::popcount((bits >> 32) & mask);
    c = ring.modulus().reduce_signed(v);
  }
  return p;
}

KeyTriple keygen(const BfvContext& ctx, std::uint64_t seed) {
  const auto& ring = ctx.ring();
  const auto& params = ctx.params();
  Rng rng(seed);

  KeyTriple keys;
  keys.secret.s = sample_ternary(ring, rng);
  const Poly a = sample_uniform(ring, rng);
  const Poly e = sample_noise(ring, rng, params.noise_eta);
  keys.pub.p0 = ring.negate(ring.add(ring.multiply(a, keys.secret.s), e));
  keys.pub.p1 = a;

  const Poly s2 = ring.multiply(keys.secret.s, keys.secret.s);
  const Modulus& q = ring.modulus();
  std::uint64_t power = 1;
  const std::size_t digits = params.relin_digits();
  keys.relin.digits.reserve(digits);
  for (std::size_t i = 0; i < digits; ++i) {
    const Poly ai = sample_uniform(ring, rng);
    const Poly ei = sample_noise(ring, rng, params.noise_eta);
    Poly bi = ring.negate(ring.add(ring.multiply(ai, keys.secret.s), ei));
    bi = ring.add(bi, ring.scale(s2, power));
    keys.relin.digits.emplace_back(std::move(bi), ai);
    power = q.mul(power, q.reduce(params.relin_base));
  }
  return keys;
}

void check_plaintext(const BfvContext& ctx, const Plaintext& m) {
  if (m.coeffs.size() != ctx.params().ring_dimension) {
    throw ValidationError("plaintext must have exactly n = " + std::to_string(ctx.params().ring_dimension) +
                          " coefficients");
  }
  for (const auto v : m.coeffs) {
    if (v >= ctx.params().plaintext_modulus) throw ValidationError("plaintext coefficient not in [0, t)");
  }
}

namespace {

Poly scaled_message(const BfvContext& ctx, const Plaintext& m) {
  const auto& ring = ctx.ring();
  Poly p(ring.degree());
  const std::uint64_t delta = ctx.params().scaling_factor();
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = ring.modulus().mul(delta, m.coeffs[i]);
  return p;
}

}  // namespace

Ciphertext encrypt(const BfvContext& ctx, const PublicKey& pk, const Plaintext& m, std::uint64_t seed) {
  check_plaintext(ctx, m);
  const auto& ring = ctx.ring();
  Rng rng(seed);
  const Poly u = sample_ternary(ring, rng);
  const Poly e1 = sample_noise(ring, rng, ctx.params().noise_eta);
  const Poly e2 = sample_noise(ring, rng, ctx.params().noise_eta);

  Ciphertext c;
  c.params_fingerprint = ctx.fingerprint();
  c.polys.push_back(ring.add(ring.add(ring.multiply(pk.p0, u), e1), scaled_message(ctx, m)));
  c.polys.push_back(ring.add(ring.multiply(pk.p1, u), e2));
  return c;
}

Ciphertext encrypt_noiseless(const BfvContext& ctx, const Plaintext& m) {
  check_plaintext(ctx, m);
  Ciphertext c;
  c.params_fingerprint = ctx.fingerprint();
  c.polys.push_back(scaled_message(ctx, m));
  c.polys.push_back(ctx.ring().zero());
  return c;
}

Plaintext decrypt(const BfvContext& ctx, const SecretKey& sk, const Ciphertext& c) {
  const Poly x = dot_secret(ctx, sk, c);
  const std::uint64_t q = ctx.params().ciphertext_modulus;
  const std::uint64_t t = ctx.params().plaintext_modulus;
  Plaintext m;
  m.coeffs.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    // round(t*x/q) = floor((2*t*x + q) / 2q)
    const u128 num = 2 * static_cast<u128>(t) * x[i] + q;
    m.coeffs[i] = static_cast<std::uint64_t>((num / (2 * static_cast<u128>(q))) % t);
  }
  return m;
}

Ciphertext add(const BfvContext& ctx, const Ciphertext& a, const Ciphertext& b) {
  check_same_params(ctx, a);
  check_same_params(ctx, b);
  const auto& ring = ctx.ring();
  const Ciphertext& longer = a.polys.size() >= b.polys.size() ? a : b;
  const Ciphertext& shorter = a.polys.size() >= b.polys.size() ? b : a;
  Ciphertext out = longer;
  for (std::size_t i = 0; i < shorter.polys.size(); ++i) out.polys[i] = ring.add(out.polys[i], shorter.polys[i]);
  return out;
}

Ciphertext multiply(const BfvContext& ctx, const Ciphertext& a, const Ciphertext& b) {
  check_same_params(ctx, a);
  check_same_params(ctx, b);
  if (a.degree() != 1 || b.degree() != 1) {
    throw ValidationError("multiply expects degree-1 ciphertexts; relinearize first");
  }
  const auto& ring = ctx.ring();
  const auto a0 = ring.centered(a.polys[0]);
  const auto a1 = ring.centered(a.polys[1]);
  const auto b0 = ring.centered(b.polys[0]);
  const auto b1 = ring.centered(b.polys[1]);

  const auto& exact = ctx.exact();
  auto d0 = exact.multiply(a0, b0);
  auto d1 = exact.multiply(a0, b1);
  const auto d1b = exact.multiply(a1, b0);
  for (std::size_t i = 0; i < d1.size(); ++i) d1[i] += d1b[i];
  auto d2 = exact.multiply(a1, b1);

  const i128 q = static_cast<i128>(ctx.params().ciphertext_modulus);
  const i128 t = static_cast<i128>(ctx.params().plaintext_modulus);
  auto rescale = [&](const std::vector<i128>& d) {
    Poly p(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      p[i] = ring.modulus().reduce_wide(floor_div(2 * t * d[i] + q, 2 * q));
    }
    return p;
  };

  Ciphertext out;
  out.params_fingerprint = ctx.fingerprint();
  out.polys = {rescale(d0), rescale(d1), rescale(d2)};
  return out;
}

Ciphertext relinearize(const BfvContext& ctx, const RelinKey& rlk, const Ciphertext& c) {
  check_same_params(ctx, c);
  if (c.degree() == 1) return c;
  const auto& params = ctx.params();
  const std::size_t digits = params.relin_digits();
  if (rlk.digits.size() != digits) throw ValidationError("relinearization key has the wrong number of digits");

  const auto& ring = ctx.ring();
  Poly c0 = c.polys[0];
  Poly c1 = c.polys[1];
  Poly rest = c.polys[2];
  const std::uint64_t base = params.relin_base;
  for (std::size_t i = 0; i < digits; ++i) {
    Poly digit(rest.size());
    for (std::size_t j = 0; j < rest.size(); ++j) {
      digit[j] = rest[j] % base;
      rest[j] /= base;
    }
    c0 = ring.add(c0, ring.multiply(rlk.digits[i].first, digit));
    c1 = ring.add(c1, ring.multiply(rlk.digits[i].second, digit));
  }

  Ciphertext out;
  out.params_fingerprint = c.params_fingerprint;
  out.polys = {std::move(c0), std::move(c1)};
  return out;
}

std::uint64_t noise_norm(const BfvContext& ctx, const SecretKey& sk, const Ciphertext& c) {
  const Poly x = dot_secret(ctx, sk, c);
  const Modulus& q = ctx.ring().modulus();
  const std::uint64_t t = ctx.params().plaintext_modulus;
  std::uint64_t norm = 0;
  for (const auto v : x) {
    const std::int64_t r = q.center(q.mul(v, t));
    norm = std::max(norm, static_cast<std::uint64_t>(r < 0 ? -r : r));
  }
  return norm;
}

double noise_budget(const BfvContext& ctx, const SecretKey& sk, const Ciphertext& c) {
  const std::uint64_t norm = std::max<std::uint64_t>(1, noise_norm(ctx, sk, c));
  const double q = static_cast<double>(ctx.params().ciphertext_modulus);
  return std::max(0.0, std::log2(q / (2.0 * static_cast<double>(norm))));
}

}  // namespace encmatch::bfv
