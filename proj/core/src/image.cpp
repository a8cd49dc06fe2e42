#include "encmatch/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "encmatch/errors.hpp"
#include "encmatch/rng.hpp"

namespace encmatch {

RasterImage::RasterImage(std::size_t width, std::size_t height)
    : width_(width), height_(height), data_(width * height * kChannels, 0) {}

RasterImage::RasterImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (data_.size() != width_ * height_ * kChannels) {
    throw ValidationError("RasterImage: expected " + std::to_string(width_ * height_ * kChannels) +
                          " samples, got " + std::to_string(data_.size()));
  }
}

namespace {

RasterImage resize_nearest(const RasterImage& img, std::size_t width, std::size_t height) {
  RasterImage out(width, height);
  for (std::size_t y = 0; y < height; ++y) {
    const std::size_t sy = std::min(img.height() - 1, y * img.height() / height);
    for (std::size_t x = 0; x < width; ++x) {
      const std::size_t sx = std::min(img.width() - 1, x * img.width() / width);
      for (std::size_t c = 0; c < RasterImage::kChannels; ++c) out.at(x, y, c) = img.at(sx, sy, c);
    }
  }
  return out;
}

struct Tap {
  std::size_t lo;
  std::size_t hi;
  double frac;
};

std::vector<Tap> bilinear_taps(std::size_t src, std::size_t dst) {
  std::vector<Tap> taps(dst);
  const double scale = static_cast<double>(src) / static_cast<double>(dst);
  for (std::size_t i = 0; i < dst; ++i) {
    double pos = (static_cast<double>(i) + 0.5) * scale - 0.5;
    pos = std::clamp(pos, 0.0, static_cast<double>(src - 1));
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, src - 1);
    taps[i] = {lo, hi, pos - static_cast<double>(lo)};
  }
  return taps;
}

RasterImage resize_bilinear(const RasterImage& img, std::size_t width, std::size_t height) {
  const auto xt = bilinear_taps(img.width(), width);
  const auto yt = bilinear_taps(img.height(), height);
  RasterImage out(width, height);
  for (std::size_t y = 0; y < height; ++y) {
    const Tap ty = yt[y];
    for (std::size_t x = 0; x < width; ++x) {
      const Tap tx = xt[x];
      for (std::size_t c = 0; c < RasterImage::kChannels; ++c) {
        const double top = img.at(tx.lo, ty.lo, c) * (1.0 - tx.frac) + img.at(tx.hi, ty.lo, c) * tx.frac;
        const double bot = img.at(tx.lo, ty.hi, c) * (1.0 - tx.frac) + img.at(tx.hi, ty.hi, c) * tx.frac;
        const double v = top * (1.0 - ty.frac) + bot * ty.frac;
        out.at(x, y, c) = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
      }
    }
  }
  return out;
}

}  // namespace

RasterImage resize(const RasterImage& img, std::size_t width, std::size_t height) {
  if (img.empty() || width == 0 || height == 0) {
    throw ValidationError("resize: zero-sized image or target");
  }
  if (width == img.width() && height == img.height()) return img;
  if (width <= img.width() && height <= img.height()) return resize_bilinear(img, width, height);
  return resize_nearest(img, width, height);
}

RasterImage crop(const RasterImage& img, const PixelRect& rect) {
  if (rect.width == 0 || rect.height == 0 || rect.x + rect.width > img.width() ||
      rect.y + rect.height > img.height()) {
    throw ValidationError("crop: rectangle outside the image");
  }
  RasterImage out(rect.width, rect.height);
  const std::size_t row_bytes = rect.width * RasterImage::kChannels;
  for (std::size_t y = 0; y < rect.height; ++y) {
    const auto src = img.data().subspan(img.offset(rect.x, rect.y + y), row_bytes);
    std::copy(src.begin(), src.end(), out.data().begin() + static_cast<std::ptrdiff_t>(out.offset(0, y)));
  }
  return out;
}

RasterImage pad(const RasterImage& img, std::size_t width, std::size_t height, std::size_t x,
                std::size_t y) {
  if (x + img.width() > width || y + img.height() > height) {
    throw ValidationError("pad: source does not fit in the canvas");
  }
  RasterImage out(width, height);
  const std::size_t row_bytes = img.width() * RasterImage::kChannels;
  for (std::size_t row = 0; row < img.height(); ++row) {
    const auto src = img.data().subspan(img.offset(0, row), row_bytes);
    std::copy(src.begin(), src.end(),
              out.data().begin() + static_cast<std::ptrdiff_t>(out.offset(x, y + row)));
  }
  return out;
}

double mean_intensity(const RasterImage& img) {
  if (img.empty()) return 0.0;
  double sum = 0.0;
  for (const auto v : img.data()) sum += v;
  return sum / static_cast<double>(img.data().size());
}

std::uint64_t image_hash(const RasterImage& img) {
  const std::uint64_t dims[2] = {img.width(), img.height()};
  const auto h = fnv1a64({reinterpret_cast<const std::uint8_t*>(dims), sizeof(dims)});
  return fnv1a64(img.data(), h);
}

}  // namespace encmatch
