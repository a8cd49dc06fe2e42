#pragma once

// Six-channel sample set file, read by the training component.
//
//   header: "SIX1" | u32 version=1 | u32 count | u32 height | u32 width
//           | u32 channels | u32 dtype (0 = float32)
//   record: u64 pair_id | i32 label | u32 split (0 train, 1 valid)
//           | height*width*channels float32, H x W x C order
//
// All fields little-endian.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>

#include "encmatch/augment.hpp"

namespace encmatch::samples {

inline constexpr std::size_t kHeaderSize = 28;
inline constexpr std::uint32_t kDtypeFloat32 = 0;

struct SampleSetInfo {
  std::uint32_t count = 0;
  std::uint32_t height = 0;
  std::uint32_t width = 0;
  std::uint32_t channels = 6;

  std::size_t record_bytes() const { return 16 + std::size_t{height} * width * channels * 4; }
};

struct SampleRecord {
  augment::SixChannelSample sample;
  std::uint32_t split = 0;
};

/// Streams records to disk; the count is patched in by finish().
class SampleWriter {
 public:
  SampleWriter(const std::filesystem::path& path, std::uint32_t height, std::uint32_t width,
               std::uint32_t channels = 6);
  ~SampleWriter();
  SampleWriter(const SampleWriter&) = delete;
  SampleWriter& operator=(const SampleWriter&) = delete;

  void write(const augment::SixChannelSample& sample, std::uint32_t split);
  void finish();
  std::uint32_t count() const noexcept { return count_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::uint32_t height_, width_, channels_;
  std::uint32_t count_ = 0;
  bool finished_ = false;
};

class SampleReader {
 public:
  explicit SampleReader(const std::filesystem::path& path);

  const SampleSetInfo& info() const noexcept { return info_; }
  /// Next record, or nullopt after the last one.
  std::optional<SampleRecord> next();

 private:
  std::ifstream in_;
  SampleSetInfo info_;
  std::uint32_t read_ = 0;
};

}  // namespace encmatch::samples
