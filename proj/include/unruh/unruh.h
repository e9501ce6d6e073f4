/*
 * C interface to the horizon-straddling homodyne channel library.
 *
 * Every fallible call returns an unruh_status. On failure a description is
 * available from unruh_last_error() on the calling thread until the next
 * failing call on that thread. Handles are opaque; a context may be read
 * concurrently by any number of threads as long as nobody mutates it.
 */
#ifndef UNRUH_H
#define UNRUH_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(UNRUH_BUILDING_LIBRARY)
#    define UNRUH_API __declspec(dllexport)
#  else
#    define UNRUH_API __declspec(dllimport)
#  endif
#else
#  define UNRUH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum unruh_status {
  UNRUH_OK = 0,
  UNRUH_ERR_DOMAIN = 1,
  UNRUH_ERR_RANGE = 2,
  UNRUH_ERR_CONVERGENCE = 3,
  UNRUH_ERR_EVALUATION = 4,
  UNRUH_ERR_DEGENERATE_CHANNEL = 5,
  UNRUH_ERR_OPTIMIZATION = 6,
  UNRUH_ERR_RESOLUTION = 7,
  UNRUH_ERR_USAGE = 8,
  UNRUH_ERR_NULL_ARGUMENT = 20,
  UNRUH_ERR_INDEX = 21,
  UNRUH_ERR_OUT_OF_MEMORY = 22,
  UNRUH_ERR_INTERNAL = 23
} unruh_status;

typedef enum unruh_metric {
  UNRUH_METRIC_SNR_GAIN = 0,
  UNRUH_METRIC_CONDITIONAL_VARIANCE = 1,
  UNRUH_METRIC_I_NORM = 2,
  UNRUH_METRIC_V_BAR = 3
} unruh_metric;

typedef enum unruh_axis { UNRUH_AXIS_U = 0, UNRUH_AXIS_KCUT = 1 } unruh_axis;

typedef enum unruh_optimize_status {
  UNRUH_OPT_CONVERGED = 0,
  UNRUH_OPT_PLATEAU = 1,
  UNRUH_OPT_BOUNDARY = 2
} unruh_optimize_status;

typedef struct unruh_context unruh_context;
typedef struct unruh_curve unruh_curve;
typedef struct unruh_sweep unruh_sweep;

/* Snapshot of everything a context holds. */
typedef struct unruh_context_values {
  double u;
  double delta;
  double alpha_re;
  double alpha_im;
  double beta;
  double phi;
  double k_cut;
  double rel_tol;
  double abs_tol;
  size_t max_subdivisions;
  size_t edge_panels;
  unsigned threads;
} unruh_context_values;

typedef struct unruh_observables {
  double i_norm;
  double x_bar;
  double v_bar;
  double snr_gain;
  double v_c;
  double i_err;
  double v_err;
  size_t evaluations;
  double truncation_k;
} unruh_observables;

typedef struct unruh_sweep_row {
  double u;
  double delta;
  double k_cut;
  unruh_observables obs;
  int ok;
  const char* note; /* owned by the sweep handle; "" when ok */
} unruh_sweep_row;

typedef struct unruh_curve_point {
  double k_cut;
  double metric;
  double error_estimate;
  const char* note; /* owned by the curve handle; "" on success */
} unruh_curve_point;

typedef struct unruh_optimum {
  double k_opt;
  double metric_at_opt;
  double error_at_opt;
  double bracket_lo;
  double bracket_hi;
  int converged;
  unruh_optimize_status status;
  size_t iterations;
} unruh_optimum;

typedef struct unruh_oracle_config {
  double k_so;
  size_t grid_s;
  size_t grid_d;
  double window;
} unruh_oracle_config;

typedef struct unruh_oracle_result {
  double lo_strength;
  double variance;
  double relative_resolution;
} unruh_oracle_result;

UNRUH_API const char* unruh_version(void);
UNRUH_API const char* unruh_status_string(unruh_status status);
UNRUH_API const char* unruh_last_error(void);

/* Context: channel parameters, detector cutoff, quadrature settings. */
UNRUH_API unruh_status unruh_context_create(unruh_context** out);
UNRUH_API unruh_status unruh_context_clone(const unruh_context* ctx, unruh_context** out);
UNRUH_API void unruh_context_destroy(unruh_context* ctx);
UNRUH_API unruh_status unruh_context_get(const unruh_context* ctx, unruh_context_values* out);
UNRUH_API unruh_status unruh_context_set_channel(unruh_context* ctx, double u, double delta);
UNRUH_API unruh_status unruh_context_set_amplitudes(unruh_context* ctx, double alpha_re, double alpha_im,
                                                    double beta);
UNRUH_API unruh_status unruh_context_set_phase(unruh_context* ctx, double phi);
UNRUH_API unruh_status unruh_context_set_cutoff(unruh_context* ctx, double k_cut);
UNRUH_API unruh_status unruh_context_set_quadrature(unruh_context* ctx, double rel_tol, double abs_tol,
                                                    size_t max_subdivisions, size_t edge_panels);
/* 0 selects the hardware concurrency. */
UNRUH_API unruh_status unruh_context_set_threads(unruh_context* ctx, unsigned threads);

UNRUH_API unruh_status unruh_compute_observables(const unruh_context* ctx, unruh_observables* out);

/* Observables along u or k_cut; rows come back in input order. */
UNRUH_API unruh_status unruh_sweep_run(const unruh_context* ctx, unruh_axis axis, const double* values, size_t n,
                                       unruh_sweep** out);
UNRUH_API size_t unruh_sweep_size(const unruh_sweep* sweep);
UNRUH_API unruh_status unruh_sweep_get_row(const unruh_sweep* sweep, size_t index, unruh_sweep_row* out);
UNRUH_API void unruh_sweep_destroy(unruh_sweep* sweep);

UNRUH_API unruh_status unruh_scan_metric(const unruh_context* ctx, unruh_metric metric, const double* grid,
                                         size_t n, unruh_curve** out);
UNRUH_API size_t unruh_curve_size(const unruh_curve* curve);
UNRUH_API unruh_status unruh_curve_get_point(const unruh_curve* curve, size_t index, unruh_curve_point* out);
UNRUH_API void unruh_curve_destroy(unruh_curve* curve);

/* scan_points = 0 selects the default of 40. scan_out may be NULL. */
UNRUH_API unruh_status unruh_find_optimal_cutoff(const unruh_context* ctx, unruh_metric metric, double search_lo,
                                                 double search_hi, double x_tol, size_t scan_points,
                                                 unruh_optimum* out, unruh_curve** scan_out);

UNRUH_API void unruh_oracle_config_default(unruh_oracle_config* cfg);
UNRUH_API unruh_status unruh_oracle_triple(const unruh_context* ctx, const unruh_oracle_config* cfg,
                                           unruh_oracle_result* out);
UNRUH_API unruh_status unruh_oracle_exact_lo_strength(const unruh_context* ctx, const unruh_oracle_config* cfg,
                                                      double* out);

/* Scalar kernels. */
UNRUH_API unruh_status unruh_rindler_to_minkowski(double tau, double xi, double a, double* t, double* x);
UNRUH_API unruh_status unruh_thermal_weight_signal(double k, double* out);
UNRUH_API unruh_status unruh_thermal_weight_variance(double k, double* out);
UNRUH_API unruh_status unruh_mean_occupation(double k, double* out);
UNRUH_API unruh_status unruh_gamma_sq_magnitude(double k, double* out);
/* terms receives t1, t2, t3, total. */
UNRUH_API unruh_status unruh_gaussian_bracket(double k, double u, double delta, double terms[4]);
UNRUH_API unruh_status unruh_truncation_limit(double u, double delta, double tail_tol, double* out);
UNRUH_API unruh_status unruh_asymptotic_lo_strength(double u, double* out);
UNRUH_API unruh_status unruh_asymptotic_variance(double u, double* out);

#ifdef __cplusplus
}
#endif

#endif
