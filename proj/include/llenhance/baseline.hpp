#pragma once

#include "llenhance/gradient.hpp"
#include "llenhance/image.hpp"

namespace llenhance {

/// Standard 256-bin CDF remap. Constant images come back unchanged.
GrayImage histogram_equalize(const GrayImage& img);

/// Intensity-domain application of the gradient gain: clip(f * L(f)).
GrayImage gain_map_enhance(const GrayImage& img, const EnhancementParams& p,
                           const IntensityRange& range = {});

}  // namespace llenhance
