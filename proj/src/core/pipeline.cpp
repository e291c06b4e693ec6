#include "llenhance/pipeline.hpp"

#include "llenhance/color.hpp"

namespace llenhance {

GradientField enhanced_field(const GrayImage& img, const EnhancementParams& p,
                             const GradientHook& hook) {
  return manipulate(enhance_gradients(img, compute_gradients(img), p), hook);
}

GrayEnhancement enhance_gray(const GrayImage& img, const EnhancementParams& p,
                             const IntensityRange& range, const SolverConfig& cfg,
                             const GradientHook& hook) {
  p.validate();
  range.validate();
  const GradientField q = enhanced_field(img, p, hook);

  GrayImage start = img;
  for (double& v : start.data()) v = range.clamp(v);

  SolverConfig solve_cfg = cfg;
  if (!solve_cfg.anchor_mean) solve_cfg.anchor_mean = img.mean();

  IntegrationResult res = integrate(q, range, solve_cfg, &start);
  return {std::move(res.image), std::move(res.report), *solve_cfg.anchor_mean};
}

ColorEnhancement enhance_color(const RgbImage& img, const EnhancementParams& p,
                               const IntensityRange& range, const SolverConfig& cfg,
                               const GradientHook& hook) {
  YccImage ycc = rgb_to_ycc(img);
  GrayEnhancement luma = enhance_gray(ycc.y, p, range, cfg, hook);
  ycc.y = luma.image;
  return {ycc_to_rgb(ycc), std::move(luma.image), std::move(luma.report), luma.anchor_mean};
}

}  // namespace llenhance
