#include "llenhance/color.hpp"

namespace llenhance {

namespace {

constexpr double kWr = 0.299;
constexpr double kWg = 0.587;
constexpr double kWb = 0.114;
constexpr double kCbScale = 0.564;
constexpr double kCrScale = 0.713;
constexpr double kChromaOffset = 128.0;

}  // namespace

YccImage rgb_to_ycc(const RgbImage& img) {
  const int w = img.width();
  const int h = img.height();
  YccImage out{GrayImage(w, h), GrayImage(w, h), GrayImage(w, h)};
  const auto r = img.red().data();
  const auto g = img.green().data();
  const auto b = img.blue().data();
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double y = kWr * r[i] + kWg * g[i] + kWb * b[i];
    out.y.data()[i] = y;
    out.cb.data()[i] = kChromaOffset + (b[i] - y) * kCbScale;
    out.cr.data()[i] = kChromaOffset + (r[i] - y) * kCrScale;
  }
  return out;
}

RgbImage ycc_to_rgb(const YccImage& img) {
  if (!img.y.same_shape(img.cb) || !img.y.same_shape(img.cr)) {
    throw Error(ErrorKind::Dimension, "YCbCr planes must share dimensions");
  }
  RgbImage out(img.y.width(), img.y.height());
  const auto y = img.y.data();
  const auto cb = img.cb.data();
  const auto cr = img.cr.data();
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] + (cr[i] - kChromaOffset) / kCrScale;
    const double b = y[i] + (cb[i] - kChromaOffset) / kCbScale;
    out.red().data()[i] = r;
    out.blue().data()[i] = b;
    out.green().data()[i] = (y[i] - kWr * r - kWb * b) / kWg;
  }
  return out;
}

GrayImage luminance(const RgbImage& img) {
  GrayImage y(img.width(), img.height());
  const auto r = img.red().data();
  const auto g = img.green().data();
  const auto b = img.blue().data();
  for (std::size_t i = 0; i < r.size(); ++i) y.data()[i] = kWr * r[i] + kWg * g[i] + kWb * b[i];
  return y;
}

}  // namespace llenhance
