#include "llenhance/gradient.hpp"

#include <cmath>

namespace llenhance {

GradientField::GradientField(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorKind::Dimension, "gradient field dimensions must be positive");
  }
  gh_.assign(static_cast<std::size_t>(height) * static_cast<std::size_t>(h_width()), 0.0);
  gv_.assign(static_cast<std::size_t>(v_height()) * static_cast<std::size_t>(width), 0.0);
}

GradientField::GradientField(int width, int height, std::vector<double> gh, std::vector<double> gv)
    : GradientField(width, height) {
  if (gh.size() != gh_.size() || gv.size() != gv_.size()) {
    throw Error(ErrorKind::Dimension, "gradient planes do not match the field dimensions");
  }
  require_finite(gh, "horizontal gradient plane");
  require_finite(gv, "vertical gradient plane");
  gh_ = std::move(gh);
  gv_ = std::move(gv);
}

void EnhancementParams::validate() const {
  if (!std::isfinite(beta) || !std::isfinite(tau)) {
    throw Error(ErrorKind::NotFinite, "beta and tau must be finite");
  }
  if (beta < 1.0) throw Error(ErrorKind::InvalidArgument, "beta must be >= 1");
  if (tau <= 0.0) throw Error(ErrorKind::InvalidArgument, "tau must be > 0");
}

GradientField compute_gradients(const GrayImage& img) {
  const int w = img.width();
  const int h = img.height();
  GradientField g(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x + 1 < w; ++x) g.h(x, y) = img.at(x + 1, y) - img.at(x, y);
  }
  for (int y = 0; y + 1 < h; ++y) {
    for (int x = 0; x < w; ++x) g.v(x, y) = img.at(x, y + 1) - img.at(x, y);
  }
  return g;
}

GrayImage divergence(const GradientField& g) {
  const int w = g.width();
  const int h = g.height();
  GrayImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double d = 0.0;
      if (x + 1 < w) d += g.h(x, y);
      if (x > 0) d -= g.h(x - 1, y);
      if (y + 1 < h) d += g.v(x, y);
      if (y > 0) d -= g.v(x, y - 1);
      out.at(x, y) = d;
    }
  }
  return out;
}

double enhancement_gain(double xi, const EnhancementParams& p) {
  if (xi < 0.0) xi = 0.0;
  if (xi > p.tau) return 1.0;
  const double b1 = p.beta - 1.0;
  if (p.mode == GainMode::Literal) {
    return b1 / (2.0 * p.tau * p.tau) * xi * xi - b1 / p.tau * xi + p.beta;
  }
  const double s = 1.0 - xi / p.tau;
  return b1 * s * s + 1.0;
}

GradientField enhance_gradients(const GrayImage& img, const GradientField& g,
                                const EnhancementParams& p) {
  p.validate();
  if (img.width() != g.width() || img.height() != g.height()) {
    throw Error(ErrorKind::Dimension, "image and gradient field dimensions differ");
  }
  GradientField q = g;
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.h_width(); ++x) q.h(x, y) *= enhancement_gain(img.at(x, y), p);
  }
  for (int y = 0; y < g.v_height(); ++y) {
    for (int x = 0; x < g.width(); ++x) q.v(x, y) *= enhancement_gain(img.at(x, y), p);
  }
  return q;
}

GradientField manipulate(const GradientField& g, const GradientHook& hook) {
  if (!hook) return g;
  GradientField out = hook(g);
  if (!out.same_shape(g)) {
    throw Error(ErrorKind::Dimension, "gradient hook changed the field shape");
  }
  require_finite(out.horizontal(), "hooked horizontal gradient plane");
  require_finite(out.vertical(), "hooked vertical gradient plane");
  return out;
}

double dot(const GradientField& a, const GradientField& b) {
  if (!a.same_shape(b)) {
    throw Error(ErrorKind::Dimension, "gradient field shapes differ");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.horizontal().size(); ++i) s += a.horizontal()[i] * b.horizontal()[i];
  for (std::size_t i = 0; i < a.vertical().size(); ++i) s += a.vertical()[i] * b.vertical()[i];
  return s;
}

}  // namespace llenhance
