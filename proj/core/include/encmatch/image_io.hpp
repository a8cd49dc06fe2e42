#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "encmatch/image.hpp"

namespace encmatch::io {

/// Whole-file helpers; throw IoError on failure.
std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);
void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

/// Reads PNG or binary PPM (P6, maxval 255), chosen by file signature.
RasterImage read_image(const std::filesystem::path& path);

/// Writes PNG unless the extension is .ppm. Output is byte-deterministic.
void write_image(const std::filesystem::path& path, const RasterImage& img);

std::vector<std::uint8_t> encode_png(const RasterImage& img);
RasterImage decode_png(std::span<const std::uint8_t> bytes);

/// Baseline JPEG at `quality` in [1, 100]; 4:2:0 chroma subsampling.
std::vector<std::uint8_t> encode_jpeg(const RasterImage& img, int quality);
RasterImage decode_jpeg(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_ppm(const RasterImage& img);
RasterImage decode_ppm(std::span<const std::uint8_t> bytes);

}  // namespace encmatch::io
