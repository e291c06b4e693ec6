/*
 * C interface to the llenhance library.
 *
 * Every fallible call returns an lle_status. On failure a human-readable
 * message for the calling thread is available from lle_last_error() until the
 * next failing call on that thread. Images are opaque handles owned by the
 * caller and released with lle_image_free().
 */
#ifndef LLENHANCE_H_
#define LLENHANCE_H_

#include <stddef.h>

#if defined(_WIN32)
#if defined(LLENHANCE_BUILDING)
#define LLE_API __declspec(dllexport)
#else
#define LLE_API __declspec(dllimport)
#endif
#else
#define LLE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct lle_image lle_image;

typedef enum lle_status {
  LLE_OK = 0,
  LLE_ERR_INVALID_ARGUMENT = 1,
  LLE_ERR_IO = 2,
  LLE_ERR_FORMAT = 3,
  LLE_ERR_DIMENSION = 4,
  LLE_ERR_NOT_FINITE = 5,
  LLE_ERR_INTERNAL = 6
} lle_status;

typedef enum lle_gain_mode {
  LLE_GAIN_CONTINUOUS = 0,
  LLE_GAIN_LITERAL = 1
} lle_gain_mode;

typedef enum lle_method {
  LLE_METHOD_GRADIENT = 0, /* gradient-domain enhancement + constrained integration */
  LLE_METHOD_HISTEQ = 1,   /* standard CDF histogram equalization */
  LLE_METHOD_GAINMAP = 2   /* per-pixel gain, no integration */
} lle_method;

typedef struct lle_params {
  double beta;
  double tau;
  lle_gain_mode mode;
  lle_method method;
  double range_min;
  double range_max;
  double tol;
  int max_sweeps;
  double omega;        /* 0: optimal SOR factor for the image size */
  int has_anchor_mean; /* 0: anchor to the input luminance mean */
  double anchor_mean;
  int threads;         /* > 1 selects the red-black parallel sweep */
} lle_params;

typedef struct lle_solve_report {
  int has_solver; /* 0 for the baseline methods */
  int sweeps_used;
  double final_residual;
  double objective;
  int converged;
  double anchor_mean;
  double omega; /* relaxation factor actually used */
} lle_solve_report;

typedef struct lle_kkt_summary {
  size_t interior;
  size_t at_lower;
  size_t at_upper;
  size_t excluded; /* colour pixels next to a gamut-clamped channel */
  size_t violations;
  double max_violation;
  double tol;
} lle_kkt_summary;

/* beta 15, tau 50, continuous gain, gradient method, range [0, 255],
 * tol 1e-3, 10000 sweeps, automatic omega, anchor to input mean, 1 thread. */
LLE_API void lle_params_init(lle_params* params);

LLE_API const char* lle_status_string(lle_status status);
LLE_API const char* lle_last_error(void);
LLE_API const char* lle_version(void);

LLE_API lle_status lle_image_load(const char* path, lle_image** out);
/* channels is 1 (gray) or 3 (interleaved RGB). */
LLE_API lle_status lle_image_create(int width, int height, int channels,
                                    const double* samples, lle_image** out);
LLE_API void lle_image_free(lle_image* image);

LLE_API int lle_image_width(const lle_image* image);
LLE_API int lle_image_height(const lle_image* image);
LLE_API int lle_image_channels(const lle_image* image);
/* Copies width*height*channels interleaved samples into out. */
LLE_API lle_status lle_image_read(const lle_image* image, double* out, size_t count);
LLE_API lle_status lle_image_mean_luminance(const lle_image* image, double* out);

LLE_API lle_status lle_image_save(const lle_image* image, const char* path,
                                  double range_min, double range_max);

/* Runs params->method on the image. report may be NULL. */
LLE_API lle_status lle_enhance(const lle_image* input, const lle_params* params,
                               lle_image** out, lle_solve_report* report);

/* Optimality check of a stored 8-bit output against the field recomputed from
 * input and params. A negative tol selects the quantization-aware default
 * 4 * (range_max - range_min) / 255 + params->tol. */
LLE_API lle_status lle_verify(const lle_image* input, const lle_image* output,
                              const lle_params* params, double tol,
                              lle_kkt_summary* summary);

#ifdef __cplusplus
}
#endif

#endif /* LLENHANCE_H_ */
