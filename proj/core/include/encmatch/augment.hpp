#pragma once

// Training-time augmentation and six-channel sample assembly.
//
// Nine primitive ops run in a fixed order; each active op fires
// independently with its own probability. Ops work on 8-bit images and
// always preserve dimensions. Four preprocessing recipes build samples:
//
//   S12  augment both halves (7 ops), normalize both       (subtasks 1, 2)
//   T1   augment original only (7 ops), normalize it; encoded half / 255
//   T2   both halves / 255, no augmentation
//   T3   augment both halves (all 9 ops), normalize both

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "encmatch/image.hpp"
#include "encmatch/rng.hpp"

namespace encmatch::augment {

enum class Op : std::uint8_t {
  ShiftScaleRotate,
  HorizontalFlip,
  RandomBrightnessContrast,
  MotionBlur,
  GaussNoise,
  ToGray,
  ImageCompression,
  MultiplicativeNoise,
  CoarseDropout,
};

inline constexpr std::size_t kOpCount = 9;

/// Application order.
inline constexpr std::array<Op, kOpCount> kOpOrder = {
    Op::ShiftScaleRotate, Op::HorizontalFlip, Op::RandomBrightnessContrast,
    Op::MotionBlur,       Op::GaussNoise,     Op::ToGray,
    Op::ImageCompression, Op::MultiplicativeNoise, Op::CoarseDropout,
};

std::string_view op_name(Op op);
std::optional<Op> op_from_name(std::string_view name);

enum class OpSet : std::uint8_t {
  Base,      ///< first seven ops
  Extended,  ///< all nine, adding multiplicative-noise and coarse-dropout
};

struct NormalizeOptions {
  std::array<float, 3> mean = {0.5f, 0.5f, 0.5f};
  std::array<float, 3> std = {0.5f, 0.5f, 0.5f};
};

struct AugmentConfig {
  OpSet ops = OpSet::Base;
  std::array<double, kOpCount> probability = {0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1};

  double shift_limit = 0.0625;  ///< fraction of the side
  double scale_min = 0.9;
  double scale_max = 1.1;
  double rotate_limit = 45.0;  ///< degrees
  double brightness_limit = 0.2;
  double contrast_limit = 0.2;
  int blur_min = 3;
  int blur_max = 7;
  double noise_var_min = 10.0;
  double noise_var_max = 50.0;
  int quality_min = 60;
  int quality_max = 100;
  double multiplier_min = 0.9;
  double multiplier_max = 1.1;
  int dropout_max_holes = 8;
  int dropout_max_size = 8;

  NormalizeOptions normalization;

  bool is_active(Op op) const;
  double& probability_of(Op op) { return probability[static_cast<std::size_t>(op)]; }
  double probability_of(Op op) const { return probability[static_cast<std::size_t>(op)]; }
  void set_all_probabilities(double p) { probability.fill(p); }

  /// Clamps probabilities to [0, 1], orders min/max pairs and lifts
  /// non-positive sizes to their smallest valid values.
  AugmentConfig clamped() const;
};

/// Parses "key = value" lines; '#' starts a comment. Keys: ops, p, p.<op>,
/// and every numeric field above by name; mean/std take three
/// comma-separated values. Throws ValidationError on unknown keys.
AugmentConfig parse_config(std::string_view text);
AugmentConfig load_config(const std::filesystem::path& path);

struct AugmentResult {
  RasterImage image;
  std::vector<Op> fired;
};

/// Runs the active ops in order, each firing with its probability.
AugmentResult augment_traced(const RasterImage& img, const AugmentConfig& cfg, std::uint64_t seed);
RasterImage apply_augmentations(const RasterImage& img, const AugmentConfig& cfg, std::uint64_t seed);

/// Runs `op` unconditionally with parameters drawn from `rng`.
RasterImage apply_op(Op op, const RasterImage& img, const AugmentConfig& cfg, Rng& rng);

// Primitives with explicit parameters.
RasterImage horizontal_flip(const RasterImage& img);
/// Affine about the centre: rotate by `angle_deg`, scale, then shift by a
/// fraction of width/height. Uncovered pixels become zero.
RasterImage shift_scale_rotate(const RasterImage& img, double shift_x, double shift_y, double scale,
                               double angle_deg);
/// v * alpha + beta, clamped.
RasterImage brightness_contrast(const RasterImage& img, double alpha, double beta);
/// Line kernel of odd `size` at `angle_deg`, clamped borders.
RasterImage motion_blur(const RasterImage& img, int size, double angle_deg);
RasterImage gauss_noise(const RasterImage& img, double sigma, Rng& rng);
/// Rounded luma 0.299 R + 0.587 G + 0.114 B in all three channels.
RasterImage to_gray(const RasterImage& img);
RasterImage image_compression(const RasterImage& img, int quality);
RasterImage multiplicative_noise(const RasterImage& img, double factor);
RasterImage coarse_dropout(const RasterImage& img, std::span<const PixelRect> holes);

/// H x W x C real tensor, channel-interleaved like RasterImage.
struct Tensor {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 0;
  std::vector<float> values;

  float at(std::size_t x, std::size_t y, std::size_t c) const { return values[(y * width + x) * channels + c]; }
  friend bool operator==(const Tensor&, const Tensor&) = default;
};

/// (v/255 - mean) / std per channel.
Tensor normalize(const RasterImage& img, const NormalizeOptions& options = {});
/// v / 255.
Tensor scale_only(const RasterImage& img);
/// Channel-wise concatenation of two equally sized tensors.
Tensor stack(const Tensor& first, const Tensor& second);

enum class Approach : std::uint8_t { S12, T1, T2, T3 };

std::string_view approach_name(Approach a);
std::optional<Approach> approach_from_name(std::string_view name);

struct SixChannelSample {
  Tensor tensor;
  int label = 0;
  std::uint64_t pair_id = 0;
};

/// Channels 0-2 come from `original`, 3-5 from `encoded`. Throws
/// ValidationError if the halves differ in size.
SixChannelSample make_sample(const RasterImage& original, const RasterImage& encoded, Approach approach,
                             const AugmentConfig& cfg, std::uint64_t seed);

/// Subtask-3 form: the blob is first viewed as an image at the original's
/// dimensions via bfv::ciphertext_to_image.
SixChannelSample make_sample(const RasterImage& original, std::span<const std::uint8_t> blob,
                             Approach approach, const AugmentConfig& cfg, std::uint64_t seed);

}  // namespace encmatch::augment
