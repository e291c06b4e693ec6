#pragma once

#include <filesystem>
#include <variant>

#include "llenhance/image.hpp"

namespace llenhance {

using AnyImage = std::variant<GrayImage, RgbImage>;

/// Reads an 8-bit PNG, binary PGM (P5) or PPM (P6). The format is detected
/// from the file signature. Samples map to [0, 255] without rescaling.
AnyImage load_image(const std::filesystem::path& path);

/// Clamps to `range`, maps affinely onto [0, 255] when the range is not the
/// standard one, rounds half away from zero and writes the format implied by
/// the extension (.png, .pgm, .ppm).
void save_image(const GrayImage& img, const std::filesystem::path& path,
                const IntensityRange& range = {});
void save_image(const RgbImage& img, const std::filesystem::path& path,
                const IntensityRange& range = {});
void save_image(const AnyImage& img, const std::filesystem::path& path,
                const IntensityRange& range = {});

/// Clamp to range then round half away from zero. Idempotent.
GrayImage quantize(const GrayImage& img, const IntensityRange& range = {});
RgbImage quantize(const RgbImage& img, const IntensityRange& range = {});

// Byte value written for a sample under `range`.
unsigned char to_byte(double v, const IntensityRange& range);

}  // namespace llenhance
