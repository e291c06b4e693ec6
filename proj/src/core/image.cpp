#include "llenhance/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace llenhance {

void IntensityRange::validate() const {
  if (!std::isfinite(r_min) || !std::isfinite(r_max)) {
    throw Error(ErrorKind::NotFinite, "intensity range bounds must be finite");
  }
  if (!(r_min < r_max)) {
    throw Error(ErrorKind::InvalidArgument, "intensity range requires r_min < r_max");
  }
}

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::NotFinite, std::string(what) + " contains a non-finite value");
    }
  }
}

namespace {

void check_dimensions(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorKind::Dimension, "image dimensions must be positive");
  }
}

}  // namespace

GrayImage::GrayImage(int width, int height, double fill) : width_(width), height_(height) {
  check_dimensions(width, height);
  if (!std::isfinite(fill)) {
    throw Error(ErrorKind::NotFinite, "fill value must be finite");
  }
  data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

GrayImage::GrayImage(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dimensions(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorKind::Dimension, "pixel count does not match width x height");
  }
  require_finite(data_, "image");
}

double GrayImage::mean() const {
  if (data_.empty()) return 0.0;
  return std::accumulate(data_.begin(), data_.end(), 0.0) / static_cast<double>(data_.size());
}

double GrayImage::min() const {
  return data_.empty() ? 0.0 : *std::min_element(data_.begin(), data_.end());
}

double GrayImage::max() const {
  return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end());
}

RgbImage::RgbImage(GrayImage red, GrayImage green, GrayImage blue)
    : red_(std::move(red)), green_(std::move(green)), blue_(std::move(blue)) {
  if (!red_.same_shape(green_) || !red_.same_shape(blue_)) {
    throw Error(ErrorKind::Dimension, "RGB planes must share dimensions");
  }
}

RgbImage::RgbImage(int width, int height)
    : red_(width, height), green_(width, height), blue_(width, height) {}

}  // namespace llenhance
