#pragma once

#include <cstddef>
#include <cstdint>

#include "encmatch/image.hpp"

namespace encmatch::synth {

/// Procedural scene: colour gradient background, random rectangles and
/// discs, and a light per-pixel texture. Fully determined by `seed`.
RasterImage scene(std::size_t width, std::size_t height, std::uint64_t seed);

/// Procedural head-and-shoulders stand-in with the face centred in frame,
/// so that a centred square crop contains it.
RasterImage face(std::size_t width, std::size_t height, std::uint64_t seed);

}  // namespace encmatch::synth
