#include "encmatch/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "encmatch/errors.hpp"
#include "encmatch/rng.hpp"

namespace encmatch::pipeline {

using catmap::CatMapKey;

RasterImage normalize_geometry(const RasterImage& img, std::size_t side,
                               const GeometryOptions& options) {
  if (img.empty()) throw ValidationError("normalize_geometry: zero-sized input");
  if (side == 0) throw ValidationError("normalize_geometry: zero target side");
  if (options.max_aspect < 1.0) throw ValidationError("normalize_geometry: max_aspect must be >= 1");
  if (img.width() == side && img.height() == side) return img;

  RasterImage work = img;
  const bool landscape = work.width() >= work.height();
  const std::size_t long_side = landscape ? work.width() : work.height();
  const std::size_t short_side = landscape ? work.height() : work.width();
  const auto max_long = static_cast<std::size_t>(std::floor(static_cast<double>(short_side) * options.max_aspect + 1e-9));
  if (long_side > max_long) {
    const std::size_t offset = (long_side - max_long) / 2;
    work = landscape ? crop(work, {offset, 0, max_long, work.height()})
                     : crop(work, {0, offset, work.width(), max_long});
  }

  const std::size_t square = std::max(work.width(), work.height());
  if (work.width() != work.height()) {
    work = pad(work, square, square, (square - work.width()) / 2, (square - work.height()) / 2);
  }
  return resize(work, side, side);
}

CatMapKey tile_key(const CatMapKey& base, std::size_t tile_index, const TileKeying& keying) {
  if (!keying.per_tile_seed) return base;
  // k in [1, period - 1].
  const std::uint64_t p = catmap::period(base);
  CatMapKey key = base;
  const std::uint64_t h = derive_seed(*keying.per_tile_seed, tile_index);
  key.iterations = p <= 1 ? 1u : static_cast<std::uint32_t>(1 + h % (p - 1));
  return key;
}

namespace {

void check_square(const RasterImage& img, const CatMapKey& key, const char* what) {
  key.validate();
  if (img.empty() || img.width() != img.height()) {
    throw ValidationError(std::string(what) + ": image must be square and non-empty");
  }
  if (img.width() % key.grid_size != 0) {
    throw ValidationError(std::string(what) + ": side " + std::to_string(img.width()) +
                          " is not divisible by tile size " + std::to_string(key.grid_size));
  }
}

// Moves every pixel of the tile at (ox, oy) to table[src]; `inverse`
// gathers instead of scatters.
void permute_tile(const RasterImage& src, RasterImage& dst, std::size_t ox, std::size_t oy,
                  std::size_t n, const std::vector<std::uint32_t>& table, bool inverse) {
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      const std::uint32_t to = table[y * n + x];
      const std::size_t tx = to % n;
      const std::size_t ty = to / n;
      const std::size_t from_off = src.offset(ox + (inverse ? tx : x), oy + (inverse ? ty : y));
      const std::size_t to_off = dst.offset(ox + (inverse ? x : tx), oy + (inverse ? y : ty));
      for (std::size_t c = 0; c < RasterImage::kChannels; ++c) {
        dst.data()[to_off + c] = src.data()[from_off + c];
      }
    }
  }
}

RasterImage run_tiled(const RasterImage& img, const CatMapKey& key, const TileKeying& keying,
                      bool inverse) {
  check_square(img, key, inverse ? "decode_tiled" : "encode_tiled");
  const std::size_t n = key.grid_size;
  const std::size_t tiles_per_row = img.width() / n;
  RasterImage out(img.width(), img.height());

  const auto shared = keying.per_tile_seed ? std::vector<std::uint32_t>{} : catmap::forward_table(key);
  for (std::size_t ty = 0; ty < tiles_per_row; ++ty) {
    for (std::size_t tx = 0; tx < tiles_per_row; ++tx) {
      if (keying.per_tile_seed) {
        const auto table = catmap::forward_table(tile_key(key, ty * tiles_per_row + tx, keying));
        permute_tile(img, out, tx * n, ty * n, n, table, inverse);
      } else {
        permute_tile(img, out, tx * n, ty * n, n, shared, inverse);
      }
    }
  }
  return out;
}

void check_fullframe(const RasterImage& img, const CatMapKey& key, const char* what) {
  key.validate();
  if (img.width() != key.grid_size || img.height() != key.grid_size) {
    throw ValidationError(std::string(what) + ": image must be " + std::to_string(key.grid_size) +
                          "x" + std::to_string(key.grid_size));
  }
}

}  // namespace

RasterImage scramble(const RasterImage& img, const CatMapKey& key) {
  check_fullframe(img, key, "scramble");
  RasterImage out(img.width(), img.height());
  permute_tile(img, out, 0, 0, key.grid_size, catmap::forward_table(key), false);
  return out;
}

RasterImage unscramble(const RasterImage& img, const CatMapKey& key) {
  check_fullframe(img, key, "unscramble");
  RasterImage out(img.width(), img.height());
  permute_tile(img, out, 0, 0, key.grid_size, catmap::forward_table(key), true);
  return out;
}

RasterImage encode_tiled(const RasterImage& img, const CatMapKey& key, const TileKeying& keying) {
  return run_tiled(img, key, keying, false);
}

RasterImage decode_tiled(const RasterImage& img, const CatMapKey& key, const TileKeying& keying) {
  return run_tiled(img, key, keying, true);
}

RasterImage encode_fullframe(const RasterImage& img, const CatMapKey& key) { return scramble(img, key); }

RasterImage decode_fullframe(const RasterImage& img, const CatMapKey& key) {
  return unscramble(img, key);
}

RasterImage prepare_face_crop(const RasterImage& img, const PixelRect& box, std::size_t side) {
  if (box.width != box.height) throw ValidationError("prepare_face_crop: crop box must be square");
  if (box.width == 0 || box.x + box.width > img.width() || box.y + box.height > img.height()) {
    throw ValidationError("prepare_face_crop: crop box outside the image");
  }
  return resize(crop(img, box), side, side);
}

PixelRect center_square_box(const RasterImage& img) {
  const std::size_t s = std::min(img.width(), img.height());
  return {(img.width() - s) / 2, (img.height() - s) / 2, s, s};
}

}  // namespace encmatch::pipeline
