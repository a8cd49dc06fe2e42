#include "encmatch/image.hpp"

#include <gtest/gtest.h>

#include <filesystem>

#include "encmatch/errors.hpp"
#include "encmatch/image_io.hpp"
#include "encmatch/synth.hpp"

namespace encmatch {
namespace {

RasterImage ramp(std::size_t w, std::size_t h) {
  RasterImage img(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      img.at(x, y, 0) = static_cast<std::uint8_t>(x * 7);
      img.at(x, y, 1) = static_cast<std::uint8_t>(y * 5);
      img.at(x, y, 2) = static_cast<std::uint8_t>(x + y);
    }
  }
  return img;
}

TEST(RasterImage, RejectsWrongDataSize) {
  EXPECT_THROW(RasterImage(2, 2, std::vector<std::uint8_t>(11)), ValidationError);
  EXPECT_NO_THROW(RasterImage(2, 2, std::vector<std::uint8_t>(12)));
}

TEST(Resize, SameSizeIsCopy) {
  const auto img = ramp(13, 9);
  EXPECT_EQ(resize(img, 13, 9), img);
}

TEST(Resize, HalvingAveragesPairs) {
  RasterImage img(2, 1);
  img.at(0, 0, 0) = 10;
  img.at(1, 0, 0) = 21;
  const auto out = resize(img, 1, 1);
  EXPECT_EQ(out.at(0, 0, 0), 16);  // floor(15.5 + 0.5)
}

TEST(Resize, UpscaleIsNearest) {
  const auto img = ramp(4, 4);
  const auto out = resize(img, 8, 8);
  for (std::size_t y = 0; y < 8; ++y) {
    for (std::size_t x = 0; x < 8; ++x) EXPECT_EQ(out.at(x, y, 0), img.at(x / 2, y / 2, 0));
  }
}

TEST(CropPad, RoundTrip) {
  const auto img = ramp(10, 6);
  const auto padded = pad(img, 16, 12, 3, 4);
  EXPECT_EQ(padded.at(0, 0, 0), 0);
  EXPECT_EQ(crop(padded, {3, 4, 10, 6}), img);
  EXPECT_THROW(crop(img, {5, 0, 6, 1}), ValidationError);
}

TEST(ImageHash, SensitiveToContent) {
  auto img = ramp(8, 8);
  const auto h = image_hash(img);
  img.at(3, 3, 1) ^= 1;
  EXPECT_NE(image_hash(img), h);
}

TEST(ImageIo, PngAndPpmRoundTrip) {
  const auto img = synth::scene(37, 23, 4);
  EXPECT_EQ(io::decode_png(io::encode_png(img)), img);
  EXPECT_EQ(io::decode_ppm(io::encode_ppm(img)), img);
  EXPECT_EQ(io::encode_png(img), io::encode_png(img));
}

TEST(ImageIo, FilesByExtension) {
  const auto dir = std::filesystem::temp_directory_path() / "encmatch_image_io";
  const auto img = synth::face(20, 30, 9);
  io::write_image(dir / "a.png", img);
  io::write_image(dir / "a.ppm", img);
  EXPECT_EQ(io::read_image(dir / "a.png"), img);
  EXPECT_EQ(io::read_image(dir / "a.ppm"), img);
  EXPECT_THROW(io::read_image(dir / "missing.png"), IoError);
  std::filesystem::remove_all(dir);
}

TEST(ImageIo, JpegIsLossyButClose) {
  const auto img = synth::scene(64, 64, 2);
  const auto back = io::decode_jpeg(io::encode_jpeg(img, 95));
  ASSERT_EQ(back.width(), 64u);
  EXPECT_NEAR(mean_intensity(back), mean_intensity(img), 2.0);
}

TEST(ImageIo, RejectsGarbage) {
  const std::vector<std::uint8_t> junk{1, 2, 3, 4, 5};
  EXPECT_THROW(io::decode_png(junk), IoError);
  EXPECT_THROW(io::decode_jpeg(junk), IoError);
  EXPECT_ANY_THROW(io::decode_ppm(junk));
}

TEST(Synth, DeterministicPerSeed) {
  EXPECT_EQ(synth::scene(50, 40, 3), synth::scene(50, 40, 3));
  EXPECT_NE(synth::scene(50, 40, 3), synth::scene(50, 40, 4));
  EXPECT_EQ(synth::face(52, 52, 3), synth::face(52, 52, 3));
}

}  // namespace
}  // namespace encmatch
