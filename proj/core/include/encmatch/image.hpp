#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace encmatch {

/// Row-major, channel-interleaved 8-bit RGB raster.
class RasterImage {
 public:
  static constexpr std::size_t kChannels = 3;

  RasterImage() = default;
  /// Zero-filled width x height image.
  RasterImage(std::size_t width, std::size_t height);
  /// Takes ownership of `data`; throws ValidationError on a size mismatch.
  RasterImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> data);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  bool empty() const noexcept { return width_ == 0 || height_ == 0; }
  std::size_t pixel_count() const noexcept { return width_ * height_; }

  std::span<std::uint8_t> data() noexcept { return data_; }
  std::span<const std::uint8_t> data() const noexcept { return data_; }

  std::size_t offset(std::size_t x, std::size_t y) const noexcept {
    return (y * width_ + x) * kChannels;
  }
  std::uint8_t& at(std::size_t x, std::size_t y, std::size_t c) noexcept {
    return data_[offset(x, y) + c];
  }
  std::uint8_t at(std::size_t x, std::size_t y, std::size_t c) const noexcept {
    return data_[offset(x, y) + c];
  }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> data_;
};

struct PixelRect {
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t width = 0;
  std::size_t height = 0;
};

/// Resamples to width x height. Bilinear (half-pixel centers) when neither
/// axis grows, nearest neighbour otherwise; same size returns a copy.
RasterImage resize(const RasterImage& img, std::size_t width, std::size_t height);

/// Copies `rect`; throws ValidationError if it leaves the image.
RasterImage crop(const RasterImage& img, const PixelRect& rect);

/// Places `img` at (x, y) inside a zero canvas of the given size.
RasterImage pad(const RasterImage& img, std::size_t width, std::size_t height, std::size_t x,
                std::size_t y);

/// Mean over all samples of all channels.
double mean_intensity(const RasterImage& img);

/// Fingerprint of dimensions and pixel data.
std::uint64_t image_hash(const RasterImage& img);

}  // namespace encmatch
