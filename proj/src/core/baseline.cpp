#include "llenhance/baseline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

namespace llenhance {

GrayImage histogram_equalize(const GrayImage& img) {
  std::array<std::uint64_t, 256> hist{};
  const auto level = [](double v) {
    return static_cast<int>(std::clamp(std::round(v), 0.0, 255.0));
  };
  for (double v : img.data()) ++hist[level(v)];

  std::array<std::uint64_t, 256> cdf{};
  std::uint64_t acc = 0;
  std::uint64_t cdf_min = 0;
  for (int i = 0; i < 256; ++i) {
    acc += hist[i];
    cdf[i] = acc;
    if (cdf_min == 0 && acc > 0) cdf_min = acc;
  }
  const std::uint64_t n = acc;
  if (n == cdf_min) return img;

  std::array<double, 256> lut{};
  for (int i = 0; i < 256; ++i) {
    const double num = cdf[i] >= cdf_min ? static_cast<double>(cdf[i] - cdf_min) : 0.0;
    lut[i] = std::round(255.0 * num / static_cast<double>(n - cdf_min));
  }
  GrayImage out = img;
  for (double& v : out.data()) v = lut[level(v)];
  return out;
}

GrayImage gain_map_enhance(const GrayImage& img, const EnhancementParams& p,
                           const IntensityRange& range) {
  p.validate();
  range.validate();
  GrayImage out = img;
  for (double& v : out.data()) v = range.clamp(v * enhancement_gain(v, p));
  return out;
}

}  // namespace llenhance
