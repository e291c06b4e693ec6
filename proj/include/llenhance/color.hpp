#pragma once

#include "llenhance/image.hpp"

namespace llenhance {

/// Full-range BT.601 luma/chroma planes, chroma centred at 128.
struct YccImage {
  GrayImage y;
  GrayImage cb;
  GrayImage cr;
};

YccImage rgb_to_ycc(const RgbImage& img);
RgbImage ycc_to_rgb(const YccImage& img);

GrayImage luminance(const RgbImage& img);

}  // namespace llenhance
