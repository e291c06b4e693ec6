#include "llenhance/llenhance.h"

#include <algorithm>
#include <exception>
#include <new>
#include <string>
#include <variant>

#include "llenhance/baseline.hpp"
#include "llenhance/color.hpp"
#include "llenhance/image_io.hpp"
#include "llenhance/integrator.hpp"
#include "llenhance/pipeline.hpp"

struct lle_image {
  llenhance::AnyImage image;
};

namespace {

using namespace llenhance;

thread_local std::string g_last_error;

lle_status fail(lle_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

lle_status to_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return LLE_ERR_INVALID_ARGUMENT;
    case ErrorKind::Io: return LLE_ERR_IO;
    case ErrorKind::Format: return LLE_ERR_FORMAT;
    case ErrorKind::Dimension: return LLE_ERR_DIMENSION;
    case ErrorKind::NotFinite: return LLE_ERR_NOT_FINITE;
  }
  return LLE_ERR_INTERNAL;
}

template <typename Fn>
lle_status guarded(Fn&& fn) {
  try {
    fn();
    return LLE_OK;
  } catch (const Error& e) {
    return fail(to_status(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(LLE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LLE_ERR_INTERNAL, e.what());
  }
}

EnhancementParams enhancement_of(const lle_params& p) {
  EnhancementParams e;
  e.beta = p.beta;
  e.tau = p.tau;
  if (p.mode == LLE_GAIN_CONTINUOUS) {
    e.mode = GainMode::Continuous;
  } else if (p.mode == LLE_GAIN_LITERAL) {
    e.mode = GainMode::Literal;
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown gain mode");
  }
  e.validate();
  return e;
}

IntensityRange range_of(const lle_params& p) {
  IntensityRange r{p.range_min, p.range_max};
  r.validate();
  return r;
}

SolverConfig solver_of(const lle_params& p) {
  SolverConfig cfg;
  cfg.tol = p.tol;
  cfg.max_sweeps = p.max_sweeps;
  if (p.omega != 0.0) cfg.omega = p.omega;
  if (p.has_anchor_mean) cfg.anchor_mean = p.anchor_mean;
  cfg.threads = p.threads;
  cfg.validate();
  return cfg;
}

void fill_report(lle_solve_report* out, const SolveReport& rep, double anchor_mean) {
  if (out == nullptr) return;
  out->has_solver = 1;
  out->sweeps_used = rep.sweeps_used;
  out->final_residual = rep.final_residual;
  out->objective = rep.objective;
  out->converged = rep.converged ? 1 : 0;
  out->anchor_mean = anchor_mean;
  out->omega = rep.omega;
}

// Baseline methods act on luma for colour inputs and keep chroma.
template <typename Fn>
AnyImage apply_on_luma(const AnyImage& in, Fn&& fn) {
  if (const auto* gray = std::get_if<GrayImage>(&in)) return fn(*gray);
  YccImage ycc = rgb_to_ycc(std::get<RgbImage>(in));
  ycc.y = fn(ycc.y);
  return ycc_to_rgb(ycc);
}

// Stored bytes back to range units.
GrayImage from_stored(const GrayImage& bytes, const IntensityRange& range) {
  if (range.is_standard()) return bytes;
  GrayImage out = bytes;
  const double scale = (range.r_max - range.r_min) / 255.0;
  for (double& v : out.data()) v = range.r_min + v * scale;
  return out;
}

}  // namespace

extern "C" {

void lle_params_init(lle_params* params) {
  if (params == nullptr) return;
  params->beta = 15.0;
  params->tau = 50.0;
  params->mode = LLE_GAIN_CONTINUOUS;
  params->method = LLE_METHOD_GRADIENT;
  params->range_min = 0.0;
  params->range_max = 255.0;
  params->tol = 1e-3;
  params->max_sweeps = 10000;
  params->omega = 0.0;
  params->has_anchor_mean = 0;
  params->anchor_mean = 0.0;
  params->threads = 1;
}

const char* lle_status_string(lle_status status) {
  switch (status) {
    case LLE_OK: return "ok";
    case LLE_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LLE_ERR_IO: return "i/o error";
    case LLE_ERR_FORMAT: return "unsupported format";
    case LLE_ERR_DIMENSION: return "dimension mismatch";
    case LLE_ERR_NOT_FINITE: return "non-finite value";
    case LLE_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* lle_last_error(void) { return g_last_error.c_str(); }

const char* lle_version(void) { return "1.0.0"; }

lle_status lle_image_load(const char* path, lle_image** out) {
  if (path == nullptr || out == nullptr) return fail(LLE_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new lle_image{load_image(path)}; });
}

lle_status lle_image_create(int width, int height, int channels, const double* samples,
                            lle_image** out) {
  if (samples == nullptr || out == nullptr) return fail(LLE_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  if (channels != 1 && channels != 3) {
    return fail(LLE_ERR_INVALID_ARGUMENT, "channels must be 1 or 3");
  }
  if (width <= 0 || height <= 0) return fail(LLE_ERR_DIMENSION, "image dimensions must be positive");
  return guarded([&] {
    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (channels == 1) {
      *out = new lle_image{GrayImage(width, height, std::vector<double>(samples, samples + n))};
      return;
    }
    std::vector<double> r(n), g(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = samples[3 * i];
      g[i] = samples[3 * i + 1];
      b[i] = samples[3 * i + 2];
    }
    *out = new lle_image{RgbImage(GrayImage(width, height, std::move(r)),
                                  GrayImage(width, height, std::move(g)),
                                  GrayImage(width, height, std::move(b)))};
  });
}

void lle_image_free(lle_image* image) { delete image; }

int lle_image_width(const lle_image* image) {
  if (image == nullptr) return 0;
  return std::visit([](const auto& im) { return im.width(); }, image->image);
}

int lle_image_height(const lle_image* image) {
  if (image == nullptr) return 0;
  return std::visit([](const auto& im) { return im.height(); }, image->image);
}

int lle_image_channels(const lle_image* image) {
  if (image == nullptr) return 0;
  return std::holds_alternative<GrayImage>(image->image) ? 1 : 3;
}

lle_status lle_image_read(const lle_image* image, double* out, size_t count) {
  if (image == nullptr || out == nullptr) return fail(LLE_ERR_INVALID_ARGUMENT, "null argument");
  const std::size_t channels = static_cast<std::size_t>(lle_image_channels(image));
  const std::size_t n = static_cast<std::size_t>(lle_image_width(image)) *
                        static_cast<std::size_t>(lle_image_height(image));
  if (count < n * channels) return fail(LLE_ERR_DIMENSION, "output buffer too small");
  if (const auto* gray = std::get_if<GrayImage>(&image->image)) {
    std::copy(gray->data().begin(), gray->data().end(), out);
    return LLE_OK;
  }
  const auto& rgb = std::get<RgbImage>(image->image);
  for (std::size_t i = 0; i < n; ++i) {
    out[3 * i] = rgb.red().data()[i];
    out[3 * i + 1] = rgb.green().data()[i];
    out[3 * i + 2] = rgb.blue().data()[i];
  }
  return LLE_OK;
}

lle_status lle_image_mean_luminance(const lle_image* image, double* out) {
  if (image == nullptr || out == nullptr) return fail(LLE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    if (const auto* gray = std::get_if<GrayImage>(&image->image)) {
      *out = gray->mean();
    } else {
      *out = luminance(std::get<RgbImage>(image->image)).mean();
    }
  });
}

lle_status lle_image_save(const lle_image* image, const char* path, double range_min,
                          double range_max) {
  if (image == nullptr || path == nullptr) return fail(LLE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { save_image(image->image, path, IntensityRange{range_min, range_max}); });
}

lle_status lle_enhance(const lle_image* input, const lle_params* params, lle_image** out,
                       lle_solve_report* report) {
  if (input == nullptr || params == nullptr || out == nullptr) {
    return fail(LLE_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = nullptr;
  if (report != nullptr) *report = lle_solve_report{};
  return guarded([&] {
    const EnhancementParams ep = enhancement_of(*params);
    const IntensityRange range = range_of(*params);
    switch (params->method) {
      case LLE_METHOD_GRADIENT: {
        const SolverConfig cfg = solver_of(*params);
        if (const auto* gray = std::get_if<GrayImage>(&input->image)) {
          GrayEnhancement res = enhance_gray(*gray, ep, range, cfg);
          fill_report(report, res.report, res.anchor_mean);
          *out = new lle_image{std::move(res.image)};
        } else {
          ColorEnhancement res = enhance_color(std::get<RgbImage>(input->image), ep, range, cfg);
          fill_report(report, res.report, res.anchor_mean);
          *out = new lle_image{std::move(res.image)};
        }
        return;
      }
      case LLE_METHOD_HISTEQ:
        *out = new lle_image{apply_on_luma(input->image, [](const GrayImage& y) {
          return histogram_equalize(y);
        })};
        return;
      case LLE_METHOD_GAINMAP:
        *out = new lle_image{apply_on_luma(input->image, [&](const GrayImage& y) {
          return gain_map_enhance(y, ep, range);
        })};
        return;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown method");
  });
}

lle_status lle_verify(const lle_image* input, const lle_image* output, const lle_params* params,
                      double tol, lle_kkt_summary* summary) {
  if (input == nullptr || output == nullptr || params == nullptr || summary == nullptr) {
    return fail(LLE_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const EnhancementParams ep = enhancement_of(*params);
    const IntensityRange range = range_of(*params);
    if (lle_image_width(input) != lle_image_width(output) ||
        lle_image_height(input) != lle_image_height(output) ||
        lle_image_channels(input) != lle_image_channels(output)) {
      throw Error(ErrorKind::Dimension, "input and output images differ in shape");
    }
    const double check_tol =
        tol >= 0.0 ? tol : 4.0 * (range.r_max - range.r_min) / 255.0 + params->tol;

    GrayImage in_luma;
    GrayImage out_luma;
    std::vector<unsigned char> exclude;
    if (const auto* gray = std::get_if<GrayImage>(&input->image)) {
      in_luma = *gray;
      out_luma = from_stored(std::get<GrayImage>(output->image), range);
    } else {
      const auto& out_rgb = std::get<RgbImage>(output->image);
      in_luma = luminance(std::get<RgbImage>(input->image));
      out_luma = luminance(RgbImage(from_stored(out_rgb.red(), range),
                                    from_stored(out_rgb.green(), range),
                                    from_stored(out_rgb.blue(), range)));
      // A stored channel at 0 or 255 may have been clamped, which moves luma.
      const int w = out_rgb.width();
      const int h = out_rgb.height();
      std::vector<unsigned char> clamped(out_luma.size(), 0);
      for (std::size_t i = 0; i < clamped.size(); ++i) {
        for (const GrayImage* plane : {&out_rgb.red(), &out_rgb.green(), &out_rgb.blue()}) {
          const double b = plane->data()[i];
          if (b <= 0.0 || b >= 255.0) clamped[i] = 1;
        }
      }
      exclude.assign(clamped.size(), 0);
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          const std::size_t p = out_luma.index(x, y);
          bool near = clamped[p] != 0;
          if (x > 0) near = near || clamped[p - 1];
          if (x + 1 < w) near = near || clamped[p + 1];
          if (y > 0) near = near || clamped[p - w];
          if (y + 1 < h) near = near || clamped[p + w];
          exclude[p] = near ? 1 : 0;
        }
      }
    }
    // Luma of stored RGB can drift a hair past the bounds; verify what the
    // solver could have produced.
    for (double& v : out_luma.data()) v = range.clamp(v);

    const GradientField q = enhanced_field(in_luma, ep);
    const KktReport rep = kkt_report(out_luma, q, range, check_tol, exclude.empty() ? nullptr : &exclude);
    summary->interior = rep.interior;
    summary->at_lower = rep.at_lower;
    summary->at_upper = rep.at_upper;
    summary->excluded = rep.excluded;
    summary->violations = rep.violations;
    summary->max_violation = rep.max_violation;
    summary->tol = check_tol;
  });
}

}  // extern "C"
