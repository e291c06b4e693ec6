#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace llenhance {

enum class ErrorKind {
  InvalidArgument,
  Io,
  Format,
  Dimension,
  NotFinite,
};

/// Exception type thrown by every fallible operation in the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Closed box [r_min, r_max] that output intensities must respect.
struct IntensityRange {
  double r_min = 0.0;
  double r_max = 255.0;

  void validate() const;
  double clamp(double v) const noexcept { return v < r_min ? r_min : (v > r_max ? r_max : v); }
  bool contains(double v) const noexcept { return v >= r_min && v <= r_max; }
  bool is_standard() const noexcept { return r_min == 0.0 && r_max == 255.0; }
};

/// Single-channel real-valued raster, row-major.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, double fill = 0.0);
  GrayImage(int width, int height, std::vector<double> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double at(int x, int y) const { return data_[index(x, y)]; }
  double& at(int x, int y) { return data_[index(x, y)]; }
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  double mean() const;
  double min() const;
  double max() const;

  bool same_shape(const GrayImage& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

/// Planar three-channel image; every plane shares the same dimensions.
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(GrayImage red, GrayImage green, GrayImage blue);
  RgbImage(int width, int height);

  int width() const noexcept { return red_.width(); }
  int height() const noexcept { return red_.height(); }

  const GrayImage& red() const noexcept { return red_; }
  const GrayImage& green() const noexcept { return green_; }
  const GrayImage& blue() const noexcept { return blue_; }
  GrayImage& red() noexcept { return red_; }
  GrayImage& green() noexcept { return green_; }
  GrayImage& blue() noexcept { return blue_; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  GrayImage red_;
  GrayImage green_;
  GrayImage blue_;
};

// Throws NotFinite if any sample is NaN or infinite.
void require_finite(std::span<const double> values, const char* what);

}  // namespace llenhance
