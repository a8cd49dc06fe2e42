#include "encmatch/pipeline.hpp"

#include <gtest/gtest.h>

#include <set>

#include "encmatch/errors.hpp"
#include "encmatch/synth.hpp"
#include "oracles.hpp"

namespace encmatch::pipeline {
namespace {

TEST(NormalizeGeometry, OutputIsSquare) {
  for (const auto& [w, h] : {std::pair{640, 480}, std::pair{480, 640}, std::pair{1000, 300}, std::pair{512, 512}}) {
    const auto out = normalize_geometry(synth::scene(w, h, 1), 512);
    EXPECT_EQ(out.width(), 512u);
    EXPECT_EQ(out.height(), 512u);
  }
}

TEST(NormalizeGeometry, SquareInputUnchanged) {
  const auto img = synth::scene(512, 512, 3);
  EXPECT_EQ(normalize_geometry(img, 512), img);
}

TEST(NormalizeGeometry, WideInputIsPaddedTopAndBottom) {
  const auto out = normalize_geometry(synth::scene(800, 600, 5), 512);
  // 4:3 keeps the full width; 100 px bands above and below, scaled by 512/800.
  for (std::size_t x = 0; x < 512; x += 37) {
    EXPECT_EQ(out.at(x, 0, 0) + out.at(x, 0, 1) + out.at(x, 0, 2), 0);
    EXPECT_EQ(out.at(x, 511, 0) + out.at(x, 511, 1) + out.at(x, 511, 2), 0);
  }
}

TEST(Scramble, PixelMovesToForwardImage) {
  const auto img = synth::scene(32, 32, 8);
  const catmap::CatMapKey key{32, 2, 3, 5};
  const auto out = scramble(img, key);
  for (std::uint32_t y = 0; y < 32; ++y) {
    for (std::uint32_t x = 0; x < 32; ++x) {
      const auto d = oracle::cat_iterate(x, y, 32, 2, 3, 5);
      for (std::size_t c = 0; c < 3; ++c) ASSERT_EQ(out.at(d[0], d[1], c), img.at(x, y, c));
    }
  }
  EXPECT_EQ(unscramble(out, key), img);
}

TEST(Scramble, RejectsSizeMismatch) {
  EXPECT_THROW(scramble(synth::scene(31, 31, 1), {32, 1, 1, 1}), ValidationError);
}

TEST(Tiled, RoundTripAndHistograms) {
  const auto img = synth::scene(512, 512, 12);
  const catmap::CatMapKey key{32, 1, 1, 5};
  const auto enc = encode_tiled(img, key);
  EXPECT_NE(enc, img);
  EXPECT_EQ(decode_tiled(enc, key), img);
  EXPECT_EQ(oracle::tile_histograms(enc.data(), 512, 512, 32), oracle::tile_histograms(img.data(), 512, 512, 32));
}

TEST(Tiled, PerTileKeysDifferButRoundTrip) {
  const auto img = synth::scene(512, 512, 13);
  const catmap::CatMapKey key{32, 1, 1, 5};
  const TileKeying keying{77};
  std::set<std::uint32_t> ks;
  for (std::size_t t = 0; t < 256; ++t) {
    const auto k = tile_key(key, t, keying).iterations;
    EXPECT_GE(k, 1u);
    EXPECT_LT(k, 24u);
    ks.insert(k);
  }
  EXPECT_GT(ks.size(), 10u);
  const auto enc = encode_tiled(img, key, keying);
  EXPECT_NE(enc, encode_tiled(img, key));
  EXPECT_EQ(decode_tiled(enc, key, keying), img);
  EXPECT_EQ(tile_key(key, 3, {}), key);
}

TEST(Tiled, RejectsIndivisibleSide) {
  EXPECT_THROW(encode_tiled(synth::scene(500, 500, 1), {32, 1, 1, 1}), ValidationError);
}

TEST(FullFrame, RoundTripPreservesGlobalHistogram) {
  const auto img = synth::scene(512, 512, 14);
  const catmap::CatMapKey key{512, 1, 1, 17};
  const auto enc = encode_fullframe(img, key);
  EXPECT_NE(enc, img);
  EXPECT_EQ(decode_fullframe(enc, key), img);
  EXPECT_EQ(oracle::tile_histograms(enc.data(), 512, 512, 512), oracle::tile_histograms(img.data(), 512, 512, 512));
}

TEST(FullFrame, PeriodIterationsAreIdentity) {
  const auto img = synth::scene(64, 64, 2);
  EXPECT_EQ(encode_fullframe(img, {64, 1, 1, 48}), img);
}

TEST(FaceCrop, ProducesFixedSide) {
  const auto img = synth::face(160, 120, 4);
  const auto out = prepare_face_crop(img, center_square_box(img));
  EXPECT_EQ(out.width(), kFaceSide);
  EXPECT_EQ(out.height(), kFaceSide);
  EXPECT_THROW(prepare_face_crop(img, {0, 0, 50, 40}), ValidationError);
  EXPECT_THROW(prepare_face_crop(img, {150, 0, 20, 20}), ValidationError);
}

}  // namespace
}  // namespace encmatch::pipeline
