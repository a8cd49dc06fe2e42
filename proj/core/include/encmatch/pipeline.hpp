#pragma once

// Per-subtask image preparation and cat-map encoders.
//
//   subtask 1: normalize to 512x512, scramble each 32x32 tile independently
//   subtask 2: normalize to 512x512, scramble the whole frame
//   subtask 3: square face crop scaled to 52x52 (encrypted by bfv/)
//
// All three colour channels of a pixel move together.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "encmatch/catmap.hpp"
#include "encmatch/image.hpp"

namespace encmatch::pipeline {

inline constexpr std::size_t kFrameSide = 512;
inline constexpr std::size_t kTileSize = 32;
inline constexpr std::size_t kFaceSide = 52;

struct GeometryOptions {
  /// Long-axis crop limit, applied before padding.
  double max_aspect = 4.0 / 3.0;
};

/// Centre-crops the long axis to at most `max_aspect`, zero-pads
/// symmetrically to a square, then scales to side x side.
RasterImage normalize_geometry(const RasterImage& img, std::size_t side,
                               const GeometryOptions& options = {});

/// Tile keying. Without a seed every tile uses the base key; with one,
/// each tile gets its own iteration count hashed from (seed, tile index).
struct TileKeying {
  std::optional<std::uint64_t> per_tile_seed;
};

/// Key actually applied to tile `tile_index`.
catmap::CatMapKey tile_key(const catmap::CatMapKey& base, std::size_t tile_index,
                           const TileKeying& keying);

/// Permutes the pixels of a square image with `key`; key.grid_size must equal
/// the side. Pixel (x, y) moves to cat_map_forward((x, y)).
RasterImage scramble(const RasterImage& img, const catmap::CatMapKey& key);
RasterImage unscramble(const RasterImage& img, const catmap::CatMapKey& key);

/// Scrambles each key.grid_size tile in place. Throws ValidationError when
/// the image is not square or the tile size does not divide the side.
RasterImage encode_tiled(const RasterImage& img, const catmap::CatMapKey& key,
                         const TileKeying& keying = {});
RasterImage decode_tiled(const RasterImage& img, const catmap::CatMapKey& key,
                         const TileKeying& keying = {});

/// One permutation over the whole (square) frame; key.grid_size == side.
RasterImage encode_fullframe(const RasterImage& img, const catmap::CatMapKey& key);
RasterImage decode_fullframe(const RasterImage& img, const catmap::CatMapKey& key);

/// Square crop scaled to side x side. Throws ValidationError for a
/// non-square or out-of-bounds box.
RasterImage prepare_face_crop(const RasterImage& img, const PixelRect& box,
                              std::size_t side = kFaceSide);

/// Largest centred square; stands in for a face detector.
PixelRect center_square_box(const RasterImage& img);

}  // namespace encmatch::pipeline
