#include "encmatch/bfv/image_codec.hpp"

#include <algorithm>
#include <cmath>

#include "encmatch/bfv/blob.hpp"
#include "encmatch/errors.hpp"

namespace encmatch::bfv {

std::size_t ciphertexts_for(std::size_t samples, std::size_t ring_dimension) {
  return (samples + ring_dimension - 1) / ring_dimension;
}

std::vector<std::uint8_t> encrypt_image(const BfvContext& ctx, const PublicKey& pk, const RasterImage& img,
                                        std::uint64_t seed) {
  if (img.width() != 52 || img.height() != 52) throw ValidationError("encrypt_image expects a 52x52 image");
  const std::size_t n = ctx.params().ring_dimension;
  if (ctx.params().plaintext_modulus <= 255) throw ValidationError("encrypt_image needs t > 255");
  const auto samples = img.data();
  const std::size_t count = ciphertexts_for(samples.size(), n);
  std::vector<Ciphertext> cts;
  cts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Plaintext m;
    m.coeffs.assign(n, 0);
    const std::size_t begin = i * n;
    const std::size_t end = std::min(samples.size(), begin + n);
    std::copy(samples.begin() + static_cast<std::ptrdiff_t>(begin), samples.begin() + static_cast<std::ptrdiff_t>(end),
              m.coeffs.begin());
    cts.push_back(encrypt(ctx, pk, m, derive_seed(seed, i)));
  }
  return serialize_ciphertexts(ctx, cts);
}

RasterImage decrypt_image(const BfvContext& ctx, const SecretKey& sk, std::span<const std::uint8_t> blob) {
  const auto cts = parse_ciphertexts(ctx, blob);
  const std::size_t n = ctx.params().ring_dimension;
  if (cts.size() != ciphertexts_for(kFaceSamples, n)) {
    throw ValidationError("blob does not hold one 52x52 image");
  }
  std::vector<std::uint8_t> data(kFaceSamples);
  for (std::size_t i = 0; i < cts.size(); ++i) {
    const Plaintext m = decrypt(ctx, sk, cts[i]);
    for (std::size_t j = 0; j < n && i * n + j < data.size(); ++j) {
      if (m.coeffs[j] > 255) throw ValidationError("decrypted sample out of byte range");
      data[i * n + j] = static_cast<std::uint8_t>(m.coeffs[j]);
    }
  }
  return RasterImage(52, 52, std::move(data));
}

RasterImage ciphertext_to_image(std::span<const std::uint8_t> blob, std::size_t width, std::size_t height) {
  parse_blob_header(blob);
  if (width == 0 || height == 0) throw ValidationError("ciphertext_to_image: zero target size");
  const auto payload = blob.subspan(kBlobHeaderSize);
  if (payload.empty()) return RasterImage(width, height);

  const std::size_t pixels = (payload.size() + 2) / 3;
  auto side = static_cast<std::size_t>(std::sqrt(static_cast<double>(pixels)));
  while (side * side < pixels) ++side;
  while (side > 1 && (side - 1) * (side - 1) >= pixels) --side;

  std::vector<std::uint8_t> data(side * side * 3, 0);
  std::copy(payload.begin(), payload.end(), data.begin());
  return resize(RasterImage(side, side, std::move(data)), width, height);
}

}  // namespace encmatch::bfv
