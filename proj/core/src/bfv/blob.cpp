#include "encmatch/bfv/blob.hpp"

#include <string>

#include "encmatch/bytes.hpp"
#include "encmatch/errors.hpp"

namespace encmatch::bfv {

namespace {

constexpr std::string_view kCiphertextMagic = "BFV1";
constexpr std::string_view kKeyMagic = "BFK1";

void put_poly(ByteWriter& w, const Poly& p) {
  for (const auto c : p) w.put_u64(c);
}

Poly get_poly(ByteReader& r, std::size_t n, std::uint64_t q) {
  Poly p(n);
  for (auto& c : p) {
    c = r.get_u64();
    if (c >= q) throw ValidationError("serialized coefficient not reduced mod q");
  }
  return p;
}

}  // namespace

std::vector<std::uint8_t> serialize_ciphertexts(const BfvContext& ctx, std::span<const Ciphertext> cts) {
  const auto& params = ctx.params();
  const std::uint32_t polys = cts.empty() ? 2u : static_cast<std::uint32_t>(cts.front().polys.size());
  ByteWriter w;
  w.put_bytes(kCiphertextMagic);
  w.put_u32(polys);
  w.put_u64(params.ring_dimension);
  w.put_u64(params.ciphertext_modulus);
  w.put_u64(params.plaintext_modulus);
  w.put_u64(cts.size());
  for (const auto& c : cts) {
    if (c.params_fingerprint != ctx.fingerprint()) throw ValidationError("ciphertext parameters do not match context");
    if (c.polys.size() != polys) throw ValidationError("all ciphertexts in a blob must share one degree");
    for (const auto& p : c.polys) put_poly(w, p);
  }
  return w.take();
}

BlobHeader parse_blob_header(std::span<const std::uint8_t> blob) {
  if (blob.size() < kBlobHeaderSize) throw ValidationError("ciphertext blob shorter than its header");
  ByteReader r(blob);
  if (r.get_bytes(4) != kCiphertextMagic) throw ValidationError("ciphertext blob: bad magic");
  BlobHeader h;
  h.polys_per_ciphertext = r.get_u32();
  h.ring_dimension = r.get_u64();
  h.ciphertext_modulus = r.get_u64();
  h.plaintext_modulus = r.get_u64();
  h.count = r.get_u64();
  if (h.polys_per_ciphertext < 2 || h.polys_per_ciphertext > 3) {
    throw ValidationError("ciphertext blob: polys per ciphertext must be 2 or 3");
  }
  if (h.ring_dimension == 0 || h.ring_dimension > (1u << 16) || h.count > (1u << 24)) {
    throw ValidationError("ciphertext blob: implausible header fields");
  }
  if (blob.size() != kBlobHeaderSize + h.payload_bytes()) {
    throw ValidationError("ciphertext blob: length " + std::to_string(blob.size()) + " does not match header (" +
                          std::to_string(kBlobHeaderSize + h.payload_bytes()) + ")");
  }
  return h;
}

std::vector<Ciphertext> parse_ciphertexts(const BfvContext& ctx, std::span<const std::uint8_t> blob) {
  const BlobHeader h = parse_blob_header(blob);
  const auto& params = ctx.params();
  if (h.ring_dimension != params.ring_dimension || h.ciphertext_modulus != params.ciphertext_modulus ||
      h.plaintext_modulus != params.plaintext_modulus) {
    throw ValidationError("ciphertext blob was written under different parameters");
  }
  ByteReader r(blob.subspan(kBlobHeaderSize));
  std::vector<Ciphertext> cts(h.count);
  for (auto& c : cts) {
    c.params_fingerprint = ctx.fingerprint();
    for (std::uint32_t i = 0; i < h.polys_per_ciphertext; ++i) {
      c.polys.push_back(get_poly(r, params.ring_dimension, params.ciphertext_modulus));
    }
  }
  return cts;
}

std::vector<std::uint8_t> serialize_keys(const BfvParams& params, const KeyTriple& keys) {
  ByteWriter w;
  w.put_bytes(kKeyMagic);
  w.put_u64(params.ring_dimension);
  w.put_u64(params.ciphertext_modulus);
  w.put_u64(params.plaintext_modulus);
  w.put_u64(params.relin_base);
  w.put_u32(params.noise_eta);
  w.put_u32(static_cast<std::uint32_t>(keys.relin.digits.size()));
  put_poly(w, keys.secret.s);
  put_poly(w, keys.pub.p0);
  put_poly(w, keys.pub.p1);
  for (const auto& [b, a] : keys.relin.digits) {
    put_poly(w, b);
    put_poly(w, a);
  }
  return w.take();
}

KeyFile parse_keys(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  if (r.get_bytes(4) != kKeyMagic) throw ValidationError("key file: bad magic");
  KeyFile f;
  f.params.ring_dimension = r.get_u64();
  f.params.ciphertext_modulus = r.get_u64();
  f.params.plaintext_modulus = r.get_u64();
  f.params.relin_base = r.get_u64();
  f.params.noise_eta = r.get_u32();
  f.params.validate();
  const std::uint32_t digits = r.get_u32();
  if (digits != f.params.relin_digits()) throw ValidationError("key file: relinearization digit count mismatch");
  const std::size_t n = f.params.ring_dimension;
  const std::uint64_t q = f.params.ciphertext_modulus;
  f.keys.secret.s = get_poly(r, n, q);
  f.keys.pub.p0 = get_poly(r, n, q);
  f.keys.pub.p1 = get_poly(r, n, q);
  for (std::uint32_t i = 0; i < digits; ++i) {
    Poly b = get_poly(r, n, q);
    Poly a = get_poly(r, n, q);
    f.keys.relin.digits.emplace_back(std::move(b), std::move(a));
  }
  if (r.remaining() != 0) throw ValidationError("key file: trailing bytes");
  return f;
}

}  // namespace encmatch::bfv
