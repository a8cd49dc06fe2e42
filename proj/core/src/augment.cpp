#include "encmatch/augment.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "encmatch/bfv/image_codec.hpp"
#include "encmatch/errors.hpp"
#include "encmatch/image_io.hpp"

namespace encmatch::augment {

namespace {

constexpr std::array<std::string_view, kOpCount> kOpNames = {
    "shift-scale-rotate", "horizontal-flip", "random-brightness-contrast",
    "motion-blur",        "gauss-noise",     "to-gray",
    "image-compression",  "multiplicative-noise", "coarse-dropout",
};

std::uint8_t clamp_byte(double v) { return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0)); }

}  // namespace

std::string_view op_name(Op op) { return kOpNames[static_cast<std::size_t>(op)]; }

std::optional<Op> op_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kOpCount; ++i) {
    if (kOpNames[i] == name) return static_cast<Op>(i);
  }
  return std::nullopt;
}

bool AugmentConfig::is_active(Op op) const {
  return ops == OpSet::Extended || (op != Op::MultiplicativeNoise && op != Op::CoarseDropout);
}

AugmentConfig AugmentConfig::clamped() const {
  AugmentConfig c = *this;
  for (auto& p : c.probability) p = std::isnan(p) ? 0.0 : std::clamp(p, 0.0, 1.0);
  auto order = [](auto& lo, auto& hi) {
    if (lo > hi) std::swap(lo, hi);
  };
  c.shift_limit = std::clamp(std::abs(c.shift_limit), 0.0, 1.0);
  c.scale_min = std::max(c.scale_min, 1e-3);
  c.scale_max = std::max(c.scale_max, 1e-3);
  order(c.scale_min, c.scale_max);
  c.rotate_limit = std::min(std::abs(c.rotate_limit), 180.0);
  c.brightness_limit = std::min(std::abs(c.brightness_limit), 1.0);
  c.contrast_limit = std::min(std::abs(c.contrast_limit), 1.0);
  c.blur_min = std::max(c.blur_min, 3);
  c.blur_max = std::max(c.blur_max, 3);
  order(c.blur_min, c.blur_max);
  c.noise_var_min = std::max(c.noise_var_min, 0.0);
  c.noise_var_max = std::max(c.noise_var_max, 0.0);
  order(c.noise_var_min, c.noise_var_max);
  c.quality_min = std::clamp(c.quality_min, 1, 100);
  c.quality_max = std::clamp(c.quality_max, 1, 100);
  order(c.quality_min, c.quality_max);
  c.multiplier_min = std::max(c.multiplier_min, 0.0);
  c.multiplier_max = std::max(c.multiplier_max, 0.0);
  order(c.multiplier_min, c.multiplier_max);
  c.dropout_max_holes = std::max(c.dropout_max_holes, 1);
  c.dropout_max_size = std::max(c.dropout_max_size, 1);
  for (auto& s : c.normalization.std) {
    if (!(std::abs(s) > 0.0f)) s = 1.0f;
  }
  return c;
}

namespace {

double parse_double(std::string_view key, std::string_view value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(value), &used);
    if (used != value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ValidationError("augment config: bad number for '" + std::string(key) + "'");
  }
}

int parse_int(std::string_view key, std::string_view value) {
  int v = 0;
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || end != value.data() + value.size()) {
    throw ValidationError("augment config: bad integer for '" + std::string(key) + "'");
  }
  return v;
}

std::array<float, 3> parse_triple(std::string_view key, std::string_view value) {
  std::array<float, 3> out{};
  std::size_t i = 0;
  while (true) {
    const auto comma = value.find(',');
    if (i >= 3) throw ValidationError("augment config: '" + std::string(key) + "' takes three values");
    out[i++] = static_cast<float>(parse_double(key, value.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    value = value.substr(comma + 1);
  }
  if (i == 1) out.fill(out[0]);
  else if (i != 3) throw ValidationError("augment config: '" + std::string(key) + "' takes one or three values");
  return out;
}

std::array<float, 3> parse_positive_triple(std::string_view key, std::string_view value) {
  const auto out = parse_triple(key, value);
  for (const float v : out) {
    if (!(v > 0.0f)) throw ValidationError("augment config: '" + std::string(key) + "' values must be positive");
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

AugmentConfig parse_config(std::string_view text) {
  AugmentConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("augment config line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));

    if (key == "ops") {
      if (value == "base") cfg.ops = OpSet::Base;
      else if (value == "extended") cfg.ops = OpSet::Extended;
      else throw ValidationError("augment config: ops must be 'base' or 'extended'");
    } else if (key == "p") {
      cfg.set_all_probabilities(parse_double(key, value));
    } else if (key.starts_with("p.")) {
      const auto op = op_from_name(key.substr(2));
      if (!op) throw ValidationError("augment config: unknown op '" + std::string(key.substr(2)) + "'");
      cfg.probability_of(*op) = parse_double(key, value);
    } else if (key == "shift_limit") cfg.shift_limit = parse_double(key, value);
    else if (key == "scale_min") cfg.scale_min = parse_double(key, value);
    else if (key == "scale_max") cfg.scale_max = parse_double(key, value);
    else if (key == "rotate_limit") cfg.rotate_limit = parse_double(key, value);
    else if (key == "brightness_limit") cfg.brightness_limit = parse_double(key, value);
    else if (key == "contrast_limit") cfg.contrast_limit = parse_double(key, value);
    else if (key == "blur_min") cfg.blur_min = parse_int(key, value);
    else if (key == "blur_max") cfg.blur_max = parse_int(key, value);
    else if (key == "noise_var_min") cfg.noise_var_min = parse_double(key, value);
    else if (key == "noise_var_max") cfg.noise_var_max = parse_double(key, value);
    else if (key == "quality_min") cfg.quality_min = parse_int(key, value);
    else if (key == "quality_max") cfg.quality_max = parse_int(key, value);
    else if (key == "multiplier_min") cfg.multiplier_min = parse_double(key, value);
    else if (key == "multiplier_max") cfg.multiplier_max = parse_double(key, value);
    else if (key == "dropout_max_holes") cfg.dropout_max_holes = parse_int(key, value);
    else if (key == "dropout_max_size") cfg.dropout_max_size = parse_int(key, value);
    else if (key == "mean") cfg.normalization.mean = parse_triple(key, value);
    else if (key == "std") cfg.normalization.std = parse_positive_triple(key, value);
    else throw ValidationError("augment config: unknown key '" + std::string(key) + "'");
  }
  return cfg;
}

AugmentConfig load_config(const std::filesystem::path& path) {
  const auto bytes = io::read_bytes(path);
  return parse_config(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

RasterImage horizontal_flip(const RasterImage& img) {
  RasterImage out(img.width(), img.height());
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      for (std::size_t c = 0; c < 3; ++c) out.at(img.width() - 1 - x, y, c) = img.at(x, y, c);
    }
  }
  return out;
}

RasterImage shift_scale_rotate(const RasterImage& img, double shift_x, double shift_y, double scale,
                               double angle_deg) {
  const double w = static_cast<double>(img.width());
  const double h = static_cast<double>(img.height());
  const double cx = (w - 1) / 2;
  const double cy = (h - 1) / 2;
  const double rad = angle_deg * std::numbers::pi / 180.0;
  const double cs = std::cos(rad) / scale;
  const double sn = std::sin(rad) / scale;
  const double tx = shift_x * w;
  const double ty = shift_y * h;

  RasterImage out(img.width(), img.height());
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      // Inverse map of output pixel back into the source.
      const double dx = static_cast<double>(x) - cx - tx;
      const double dy = static_cast<double>(y) - cy - ty;
      const double sx = cs * dx + sn * dy + cx;
      const double sy = -sn * dx + cs * dy + cy;
      if (sx < -0.5 || sy < -0.5 || sx > w - 0.5 || sy > h - 0.5) continue;
      const double fx = std::clamp(sx, 0.0, w - 1);
      const double fy = std::clamp(sy, 0.0, h - 1);
      const auto x0 = static_cast<std::size_t>(std::floor(fx));
      const auto y0 = static_cast<std::size_t>(std::floor(fy));
      const std::size_t x1 = std::min(x0 + 1, img.width() - 1);
      const std::size_t y1 = std::min(y0 + 1, img.height() - 1);
      const double ax = fx - static_cast<double>(x0);
      const double ay = fy - static_cast<double>(y0);
      for (std::size_t c = 0; c < 3; ++c) {
        const double top = img.at(x0, y0, c) * (1 - ax) + img.at(x1, y0, c) * ax;
        const double bot = img.at(x0, y1, c) * (1 - ax) + img.at(x1, y1, c) * ax;
        out.at(x, y, c) = clamp_byte(top * (1 - ay) + bot * ay);
      }
    }
  }
  return out;
}

RasterImage brightness_contrast(const RasterImage& img, double alpha, double beta) {
  RasterImage out = img;
  for (auto& v : out.data()) v = clamp_byte(v * alpha + beta);
  return out;
}

RasterImage motion_blur(const RasterImage& img, int size, double angle_deg) {
  if (size < 1) size = 1;
  if (size % 2 == 0) ++size;
  const int half = size / 2;
  std::vector<double> kernel(static_cast<std::size_t>(size * size), 0.0);
  const double rad = angle_deg * std::numbers::pi / 180.0;
  for (int step = -4 * half; step <= 4 * half; ++step) {
    const double s = step / 4.0;
    const auto kx = static_cast<int>(std::lround(half + s * std::cos(rad)));
    const auto ky = static_cast<int>(std::lround(half + s * std::sin(rad)));
    kernel[static_cast<std::size_t>(ky * size + kx)] = 1.0;
  }
  double sum = 0.0;
  for (const double k : kernel) sum += k;
  for (double& k : kernel) k /= sum;

  const auto w = static_cast<std::ptrdiff_t>(img.width());
  const auto h = static_cast<std::ptrdiff_t>(img.height());
  RasterImage out(img.width(), img.height());
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    for (std::ptrdiff_t x = 0; x < w; ++x) {
      double acc[3] = {0, 0, 0};
      for (int ky = 0; ky < size; ++ky) {
        for (int kx = 0; kx < size; ++kx) {
          const double k = kernel[static_cast<std::size_t>(ky * size + kx)];
          if (k == 0.0) continue;
          const auto sx = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(x + kx - half, 0, w - 1));
          const auto sy = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(y + ky - half, 0, h - 1));
          for (std::size_t c = 0; c < 3; ++c) acc[c] += k * img.at(sx, sy, c);
        }
      }
      for (std::size_t c = 0; c < 3; ++c) {
        out.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y), c) = clamp_byte(acc[c]);
      }
    }
  }
  return out;
}

RasterImage gauss_noise(const RasterImage& img, double sigma, Rng& rng) {
  RasterImage out = img;
  for (auto& v : out.data()) v = clamp_byte(v + sigma * rng.normal());
  return out;
}

RasterImage to_gray(const RasterImage& img) {
  RasterImage out(img.width(), img.height());
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      const std::uint8_t g =
          clamp_byte(0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) + 0.114 * img.at(x, y, 2));
      for (std::size_t c = 0; c < 3; ++c) out.at(x, y, c) = g;
    }
  }
  return out;
}

RasterImage image_compression(const RasterImage& img, int quality) {
  return io::decode_jpeg(io::encode_jpeg(img, quality));
}

RasterImage multiplicative_noise(const RasterImage& img, double factor) {
  RasterImage out = img;
  for (auto& v : out.data()) v = clamp_byte(v * factor);
  return out;
}

RasterImage coarse_dropout(const RasterImage& img, std::span<const PixelRect> holes) {
  RasterImage out = img;
  for (const auto& hole : holes) {
    for (std::size_t y = hole.y; y < std::min(img.height(), hole.y + hole.height); ++y) {
      for (std::size_t x = hole.x; x < std::min(img.width(), hole.x + hole.width); ++x) {
        for (std::size_t c = 0; c < 3; ++c) out.at(x, y, c) = 0;
      }
    }
  }
  return out;
}

RasterImage apply_op(Op op, const RasterImage& img, const AugmentConfig& cfg, Rng& rng) {
  switch (op) {
    case Op::ShiftScaleRotate: {
      const double sx = rng.uniform(-cfg.shift_limit, cfg.shift_limit);
      const double sy = rng.uniform(-cfg.shift_limit, cfg.shift_limit);
      const double scale = rng.uniform(cfg.scale_min, cfg.scale_max);
      const double angle = rng.uniform(-cfg.rotate_limit, cfg.rotate_limit);
      return shift_scale_rotate(img, sx, sy, scale, angle);
    }
    case Op::HorizontalFlip:
      return horizontal_flip(img);
    case Op::RandomBrightnessContrast: {
      const double alpha = 1.0 + rng.uniform(-cfg.contrast_limit, cfg.contrast_limit);
      const double beta = 255.0 * rng.uniform(-cfg.brightness_limit, cfg.brightness_limit);
      return brightness_contrast(img, alpha, beta);
    }
    case Op::MotionBlur: {
      const int lo = (cfg.blur_min - 1) / 2;
      const int hi = (cfg.blur_max - 1) / 2;
      const int size = 2 * static_cast<int>(rng.uniform_int(lo, hi)) + 1;
      return motion_blur(img, size, rng.uniform(0.0, 180.0));
    }
    case Op::GaussNoise:
      return gauss_noise(img, std::sqrt(rng.uniform(cfg.noise_var_min, cfg.noise_var_max)), rng);
    case Op::ToGray:
      return to_gray(img);
    case Op::ImageCompression:
      return image_compression(img, static_cast<int>(rng.uniform_int(cfg.quality_min, cfg.quality_max)));
    case Op::MultiplicativeNoise:
      return multiplicative_noise(img, rng.uniform(cfg.multiplier_min, cfg.multiplier_max));
    case Op::CoarseDropout: {
      const auto count = rng.uniform_int(1, cfg.dropout_max_holes);
      std::vector<PixelRect> holes;
      for (std::int64_t i = 0; i < count; ++i) {
        const auto hw = static_cast<std::size_t>(
            rng.uniform_int(1, std::min<std::int64_t>(cfg.dropout_max_size, static_cast<std::int64_t>(img.width()))));
        const auto hh = static_cast<std::size_t>(
            rng.uniform_int(1, std::min<std::int64_t>(cfg.dropout_max_size, static_cast<std::int64_t>(img.height()))));
        const auto x = static_cast<std::size_t>(rng.uniform_below(img.width() - hw + 1));
        const auto y = static_cast<std::size_t>(rng.uniform_below(img.height() - hh + 1));
        holes.push_back({x, y, hw, hh});
      }
      return coarse_dropout(img, holes);
    }
  }
  throw ValidationError("unknown augmentation op");
}

AugmentResult augment_traced(const RasterImage& img, const AugmentConfig& config, std::uint64_t seed) {
  if (img.empty()) throw ValidationError("augment: empty image");
  const AugmentConfig cfg = config.clamped();
  Rng rng(seed);
  AugmentResult result{img, {}};
  for (const Op op : kOpOrder) {
    if (!cfg.is_active(op)) continue;
    // The firing draw is taken even when p = 0.
    if (!rng.bernoulli(cfg.probability_of(op))) continue;
    result.image = apply_op(op, result.image, cfg, rng);
    result.fired.push_back(op);
  }
  return result;
}

RasterImage apply_augmentations(const RasterImage& img, const AugmentConfig& cfg, std::uint64_t seed) {
  return augment_traced(img, cfg, seed).image;
}

Tensor normalize(const RasterImage& img, const NormalizeOptions& options) {
  Tensor t{img.height(), img.width(), 3, std::vector<float>(img.data().size())};
  const auto src = img.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const std::size_t c = i % 3;
    t.values[i] = (static_cast<float>(src[i]) / 255.0f - options.mean[c]) / options.std[c];
  }
  return t;
}

Tensor scale_only(const RasterImage& img) {
  Tensor t{img.height(), img.width(), 3, std::vector<float>(img.data().size())};
  const auto src = img.data();
  for (std::size_t i = 0; i < src.size(); ++i) t.values[i] = static_cast<float>(src[i]) / 255.0f;
  return t;
}

Tensor stack(const Tensor& first, const Tensor& second) {
  if (first.height != second.height || first.width != second.width) {
    throw ValidationError("stack: halves differ in size (" + std::to_string(first.width) + "x" +
                          std::to_string(first.height) + " vs " + std::to_string(second.width) + "x" +
                          std::to_string(second.height) + ")");
  }
  const std::size_t channels = first.channels + second.channels;
  Tensor out{first.height, first.width, channels, std::vector<float>(first.height * first.width * channels)};
  for (std::size_t p = 0; p < first.height * first.width; ++p) {
    std::copy_n(first.values.begin() + static_cast<std::ptrdiff_t>(p * first.channels), first.channels,
                out.values.begin() + static_cast<std::ptrdiff_t>(p * channels));
    std::copy_n(second.values.begin() + static_cast<std::ptrdiff_t>(p * second.channels), second.channels,
                out.values.begin() + static_cast<std::ptrdiff_t>(p * channels + first.channels));
  }
  return out;
}

std::string_view approach_name(Approach a) {
  switch (a) {
    case Approach::S12: return "S12";
    case Approach::T1: return "T1";
    case Approach::T2: return "T2";
    case Approach::T3: return "T3";
  }
  return "?";
}

std::optional<Approach> approach_from_name(std::string_view name) {
  for (const Approach a : {Approach::S12, Approach::T1, Approach::T2, Approach::T3}) {
    if (approach_name(a) == name) return a;
  }
  return std::nullopt;
}

SixChannelSample make_sample(const RasterImage& original, const RasterImage& encoded, Approach approach,
                             const AugmentConfig& cfg, std::uint64_t seed) {
  if (original.width() != encoded.width() || original.height() != encoded.height()) {
    throw ValidationError("make_sample: original and encoded images differ in size");
  }
  AugmentConfig recipe = cfg;
  const auto& norm = cfg.normalization;
  const std::uint64_t original_seed = derive_seed(seed, 0);
  const std::uint64_t encoded_seed = derive_seed(seed, 1);

  SixChannelSample sample;
  switch (approach) {
    case Approach::S12:
      recipe.ops = OpSet::Base;
      sample.tensor = stack(normalize(apply_augmentations(original, recipe, original_seed), norm),
                            normalize(apply_augmentations(encoded, recipe, encoded_seed), norm));
      break;
    case Approach::T1:
      recipe.ops = OpSet::Base;
      sample.tensor = stack(normalize(apply_augmentations(original, recipe, original_seed), norm), scale_only(encoded));
      break;
    case Approach::T2:
      sample.tensor = stack(scale_only(original), scale_only(encoded));
      break;
    case Approach::T3:
      recipe.ops = OpSet::Extended;
      sample.tensor = stack(normalize(apply_augmentations(original, recipe, original_seed), norm),
                            normalize(apply_augmentations(encoded, recipe, encoded_seed), norm));
      break;
  }
  return sample;
}

SixChannelSample make_sample(const RasterImage& original, std::span<const std::uint8_t> blob,
                             Approach approach, const AugmentConfig& cfg, std::uint64_t seed) {
  return make_sample(original, bfv::ciphertext_to_image(blob, original.width(), original.height()), approach, cfg,
                     seed);
}

}  // namespace encmatch::augment
