#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "encmatch/bfv/scheme.hpp"
#include "encmatch/image.hpp"

namespace encmatch::bfv {

/// Samples in a 52x52 RGB face crop.
inline constexpr std::size_t kFaceSamples = 52 * 52 * 3;

/// Number of ciphertexts an image of `samples` bytes occupies.
std::size_t ciphertexts_for(std::size_t samples, std::size_t ring_dimension);

/// Packs the 52x52 image row-major, channel-interleaved into
/// ceil(8112 / n) plaintexts (unused tail coefficients zero), encrypts each
/// with a seed derived from `seed` and its index, and returns the blob.
std::vector<std::uint8_t> encrypt_image(const BfvContext& ctx, const PublicKey& pk, const RasterImage& img,
                                        std::uint64_t seed);

RasterImage decrypt_image(const BfvContext& ctx, const SecretKey& sk, std::span<const std::uint8_t> blob);

/// Deterministic view of a blob as an image: payload bytes fill a square
/// RGB raster of side ceil(sqrt(ceil(L/3))) row-major, the tail is zero, and
/// the result is resized to width x height. Throws ValidationError on a
/// malformed header.
RasterImage ciphertext_to_image(std::span<const std::uint8_t> blob, std::size_t width = 52,
                                std::size_t height = 52);

}  // namespace encmatch::bfv
