#pragma once

#include "llenhance/gradient.hpp"
#include "llenhance/image.hpp"
#include "llenhance/integrator.hpp"

namespace llenhance {

struct GrayEnhancement {
  GrayImage image;
  SolveReport report;
  double anchor_mean = 0.0;
};

struct ColorEnhancement {
  RgbImage image;
  GrayImage luma;  // integrated luminance, before conversion back to RGB
  SolveReport report;
  double anchor_mean = 0.0;
};

/// Gradients -> dark-region gain -> hook -> constrained integration.
///
/// Warm-starts from the input clipped to range and, unless cfg.anchor_mean is
/// set, anchors the result to the mean of the input.
GrayEnhancement enhance_gray(const GrayImage& img, const EnhancementParams& p,
                             const IntensityRange& range, const SolverConfig& cfg,
                             const GradientHook& hook = {});

/// Runs enhance_gray on the luma plane; chroma passes through untouched.
ColorEnhancement enhance_color(const RgbImage& img, const EnhancementParams& p,
                               const IntensityRange& range, const SolverConfig& cfg,
                               const GradientHook& hook = {});

/// Target field the gradient pipeline integrates for `img`.
GradientField enhanced_field(const GrayImage& img, const EnhancementParams& p,
                             const GradientHook& hook = {});

}  // namespace llenhance
