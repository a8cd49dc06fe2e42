#include "encmatch/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "encmatch/rng.hpp"

namespace encmatch::synth {

namespace {

using Color = std::array<double, 3>;

Color random_color(Rng& rng) {
  return {rng.uniform(0.0, 255.0), rng.uniform(0.0, 255.0), rng.uniform(0.0, 255.0)};
}

void blend(RasterImage& img, std::size_t x, std::size_t y, const Color& c, double alpha) {
  for (std::size_t ch = 0; ch < 3; ++ch) {
    const double v = img.at(x, y, ch) * (1.0 - alpha) + c[ch] * alpha;
    img.at(x, y, ch) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
  }
}

void fill_ellipse(RasterImage& img, double cx, double cy, double rx, double ry, const Color& c,
                  double alpha) {
  const auto x0 = static_cast<std::size_t>(std::max(0.0, std::floor(cx - rx)));
  const auto y0 = static_cast<std::size_t>(std::max(0.0, std::floor(cy - ry)));
  const auto x1 = std::min(img.width(), static_cast<std::size_t>(std::max(0.0, std::ceil(cx + rx + 1))));
  const auto y1 = std::min(img.height(), static_cast<std::size_t>(std::max(0.0, std::ceil(cy + ry + 1))));
  for (std::size_t y = y0; y < y1; ++y) {
    for (std::size_t x = x0; x < x1; ++x) {
      const double dx = (static_cast<double>(x) - cx) / rx;
      const double dy = (static_cast<double>(y) - cy) / ry;
      if (dx * dx + dy * dy <= 1.0) blend(img, x, y, c, alpha);
    }
  }
}

void fill_rect(RasterImage& img, std::size_t x0, std::size_t y0, std::size_t w, std::size_t h,
               const Color& c, double alpha) {
  for (std::size_t y = y0; y < std::min(img.height(), y0 + h); ++y) {
    for (std::size_t x = x0; x < std::min(img.width(), x0 + w); ++x) blend(img, x, y, c, alpha);
  }
}

void gradient(RasterImage& img, Rng& rng) {
  const Color from = random_color(rng);
  const Color to = random_color(rng);
  const double angle = rng.uniform(0.0, 6.283185307179586);
  const double ux = std::cos(angle);
  const double uy = std::sin(angle);
  const double w = static_cast<double>(img.width());
  const double h = static_cast<double>(img.height());
  const double span = std::abs(ux) * w + std::abs(uy) * h;
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      const double t = ((static_cast<double>(x) - w / 2) * ux + (static_cast<double>(y) - h / 2) * uy) / span + 0.5;
      for (std::size_t c = 0; c < 3; ++c) {
        img.at(x, y, c) = static_cast<std::uint8_t>(std::clamp(std::lround(from[c] + (to[c] - from[c]) * t), 0L, 255L));
      }
    }
  }
}

void texture(RasterImage& img, Rng& rng, int amplitude) {
  for (auto& v : img.data()) {
    const auto jitter = rng.uniform_int(-amplitude, amplitude);
    v = static_cast<std::uint8_t>(std::clamp<std::int64_t>(v + jitter, 0, 255));
  }
}

}  // namespace

RasterImage scene(std::size_t width, std::size_t height, std::uint64_t seed) {
  Rng rng(seed);
  RasterImage img(width, height);
  gradient(img, rng);
  const double w = static_cast<double>(width);
  const double h = static_cast<double>(height);
  const auto shapes = rng.uniform_int(6, 14);
  for (std::int64_t i = 0; i < shapes; ++i) {
    const Color c = random_color(rng);
    const double alpha = rng.uniform(0.5, 1.0);
    if (rng.bernoulli(0.5)) {
      fill_ellipse(img, rng.uniform(0, w), rng.uniform(0, h), rng.uniform(0.03, 0.2) * w,
                   rng.uniform(0.03, 0.2) * h, c, alpha);
    } else {
      const auto x0 = static_cast<std::size_t>(rng.uniform(0, w));
      const auto y0 = static_cast<std::size_t>(rng.uniform(0, h));
      fill_rect(img, x0, y0, static_cast<std::size_t>(rng.uniform(0.05, 0.35) * w),
                static_cast<std::size_t>(rng.uniform(0.05, 0.35) * h), c, alpha);
    }
  }
  texture(img, rng, 6);
  return img;
}

RasterImage face(std::size_t width, std::size_t height, std::uint64_t seed) {
  Rng rng(seed);
  RasterImage img(width, height);
  gradient(img, rng);
  const double w = static_cast<double>(width);
  const double h = static_cast<double>(height);
  const double side = std::min(w, h);
  const double cx = w / 2 + rng.uniform(-0.04, 0.04) * side;
  const double cy = h / 2 + rng.uniform(-0.04, 0.04) * side;

  const Color skin = {rng.uniform(120, 240), rng.uniform(80, 200), rng.uniform(60, 170)};
  const Color hair = {rng.uniform(0, 120), rng.uniform(0, 90), rng.uniform(0, 70)};
  const Color shirt = random_color(rng);
  const double rx = rng.uniform(0.22, 0.30) * side;
  const double ry = rx * rng.uniform(1.15, 1.35);

  fill_ellipse(img, cx, cy + ry * 1.9, rx * 2.2, ry * 1.0, shirt, 1.0);
  fill_ellipse(img, cx, cy - ry * 0.25, rx * 1.08, ry * 0.9, hair, 1.0);
  fill_ellipse(img, cx, cy, rx, ry, skin, 1.0);

  const double eye_dx = rx * rng.uniform(0.32, 0.45);
  const double eye_y = cy - ry * rng.uniform(0.1, 0.25);
  const double eye_r = rx * rng.uniform(0.08, 0.14);
  const Color iris = {rng.uniform(20, 120), rng.uniform(40, 140), rng.uniform(40, 160)};
  for (const double sx : {-1.0, 1.0}) {
    fill_ellipse(img, cx + sx * eye_dx, eye_y, eye_r * 1.6, eye_r, {245, 245, 245}, 1.0);
    fill_ellipse(img, cx + sx * eye_dx, eye_y, eye_r * 0.7, eye_r * 0.7, iris, 1.0);
  }
  fill_ellipse(img, cx, cy + ry * 0.1, rx * 0.08, ry * 0.18,
               {skin[0] * 0.85, skin[1] * 0.8, skin[2] * 0.8}, 1.0);
  fill_ellipse(img, cx, cy + ry * rng.uniform(0.45, 0.6), rx * rng.uniform(0.25, 0.45), ry * 0.07,
               {rng.uniform(120, 200), rng.uniform(30, 80), rng.uniform(40, 90)}, 1.0);
  texture(img, rng, 4);
  return img;
}

}  // namespace encmatch::synth
