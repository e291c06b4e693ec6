#pragma once

#include <functional>
#include <span>
#include <vector>

#include "llenhance/image.hpp"

namespace llenhance {

/// Forward-difference planes of a width x height image.
///
/// The horizontal plane holds height x (width - 1) samples, the vertical plane
/// (height - 1) x width. No phantom row or column is padded in, so a 1-pixel
/// wide image has an empty horizontal plane.
class GradientField {
 public:
  GradientField() = default;
  GradientField(int width, int height);
  GradientField(int width, int height, std::vector<double> gh, std::vector<double> gv);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  int h_width() const noexcept { return width_ > 0 ? width_ - 1 : 0; }
  int v_height() const noexcept { return height_ > 0 ? height_ - 1 : 0; }

  double h(int x, int y) const { return gh_[static_cast<std::size_t>(y) * h_width() + x]; }
  double& h(int x, int y) { return gh_[static_cast<std::size_t>(y) * h_width() + x]; }
  double v(int x, int y) const { return gv_[static_cast<std::size_t>(y) * width_ + x]; }
  double& v(int x, int y) { return gv_[static_cast<std::size_t>(y) * width_ + x]; }

  std::span<const double> horizontal() const noexcept { return gh_; }
  std::span<double> horizontal() noexcept { return gh_; }
  std::span<const double> vertical() const noexcept { return gv_; }
  std::span<double> vertical() noexcept { return gv_; }

  bool same_shape(const GradientField& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ &&
           gh_.size() == other.gh_.size() && gv_.size() == other.gv_.size();
  }

  friend bool operator==(const GradientField&, const GradientField&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> gh_;
  std::vector<double> gv_;
};

enum class GainMode {
  /// (beta - 1)(1 - xi/tau)^2 + 1 below tau: continuous with zero slope at tau.
  Continuous,
  /// The quadratic as printed in the original formulation; jumps from
  /// (beta + 1)/2 to 1 at tau.
  Literal,
};

struct EnhancementParams {
  double beta = 15.0;
  double tau = 50.0;
  GainMode mode = GainMode::Continuous;

  void validate() const;
};

GradientField compute_gradients(const GrayImage& img);

/// Negative adjoint of compute_gradients: <D u, q> == -<u, divergence(q)>.
GrayImage divergence(const GradientField& g);

/// Gradient gain for a pixel of intensity `xi`. Negative intensities are
/// treated as zero.
double enhancement_gain(double xi, const EnhancementParams& p);

/// Scales every forward difference by the gain of its base pixel.
GradientField enhance_gradients(const GrayImage& img, const GradientField& g,
                                const EnhancementParams& p);

using GradientHook = std::function<GradientField(const GradientField&)>;

/// Applies an optional caller-supplied transform. An empty hook is identity.
GradientField manipulate(const GradientField& g, const GradientHook& hook = {});

double dot(const GradientField& a, const GradientField& b);

}  // namespace llenhance
