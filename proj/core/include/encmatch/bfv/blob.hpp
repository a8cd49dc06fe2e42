#pragma once

// Binary formats for ciphertexts and keys. All integers little-endian.
//
// Ciphertext blob:
//   "BFV1" | u32 polys_per_ciphertext | u64 n | u64 q | u64 t | u64 count
//   then count * polys_per_ciphertext * n coefficients as u64.
//
// Key file:
//   "BFK1" | u64 n | u64 q | u64 t | u64 T | u32 eta | u32 digits
//   then s, pk0, pk1 and (b_i, a_i) for each relinearization digit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "encmatch/bfv/scheme.hpp"

namespace encmatch::bfv {

inline constexpr std::size_t kBlobHeaderSize = 40;

struct BlobHeader {
  std::uint32_t polys_per_ciphertext = 2;
  std::uint64_t ring_dimension = 0;
  std::uint64_t ciphertext_modulus = 0;
  std::uint64_t plaintext_modulus = 0;
  std::uint64_t count = 0;

  std::size_t payload_bytes() const {
    return static_cast<std::size_t>(count * polys_per_ciphertext * ring_dimension * 8);
  }
};

/// All ciphertexts must share one degree.
std::vector<std::uint8_t> serialize_ciphertexts(const BfvContext& ctx, std::span<const Ciphertext> cts);

/// Checks magic, field sanity and that the blob length matches the header.
BlobHeader parse_blob_header(std::span<const std::uint8_t> blob);

/// Parses a blob written under `ctx`'s parameters.
std::vector<Ciphertext> parse_ciphertexts(const BfvContext& ctx, std::span<const std::uint8_t> blob);

struct KeyFile {
  BfvParams params;
  KeyTriple keys;
};

std::vector<std::uint8_t> serialize_keys(const BfvParams& params, const KeyTriple& keys);
KeyFile parse_keys(std::span<const std::uint8_t> bytes);

}  // namespace encmatch::bfv
