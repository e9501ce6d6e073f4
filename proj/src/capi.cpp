#include "unruh/unruh.h"

#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "unruh/channel_math.hpp"
#include "unruh/error.hpp"
#include "unruh/kinematics.hpp"
#include "unruh/observables.hpp"
#include "unruh/optimizer.hpp"
#include "unruh/oracle.hpp"
#include "unruh/quadrature.hpp"

struct unruh_context {
  unruh::ChannelParams params;
  unruh::DetectorConfig detector;
  unsigned threads = 0;
};

struct unruh_curve {
  unruh::MetricCurve curve;
};

struct unruh_sweep {
  std::vector<unruh::SweepRow> rows;
};

namespace {

thread_local std::string last_error;

unruh_status fail(unruh_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Translates every exception into a status code; nothing escapes the C ABI.
template <typename F>
unruh_status guarded(F&& body) noexcept {
  try {
    body();
    return UNRUH_OK;
  } catch (const unruh::Error& e) {
    return fail(static_cast<unruh_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(UNRUH_ERR_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(UNRUH_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(UNRUH_ERR_INTERNAL, "unknown exception");
  }
}

#define UNRUH_REQUIRE(ptr)                                                       \
  do {                                                                           \
    if ((ptr) == nullptr) return fail(UNRUH_ERR_NULL_ARGUMENT, #ptr " is NULL"); \
  } while (0)

unruh_observables to_c(const unruh::Observables& o) {
  return {o.i_norm, o.x_bar, o.v_bar, o.snr_gain, o.v_c, o.i_err, o.v_err, o.evaluations, o.truncation_k};
}

unruh::Metric to_cpp(unruh_metric m) {
  switch (m) {
    case UNRUH_METRIC_SNR_GAIN: return unruh::Metric::snr_gain;
    case UNRUH_METRIC_CONDITIONAL_VARIANCE: return unruh::Metric::conditional_variance;
    case UNRUH_METRIC_I_NORM: return unruh::Metric::i_norm;
    case UNRUH_METRIC_V_BAR: return unruh::Metric::v_bar;
  }
  throw unruh::Error(unruh::ErrorCode::usage, "unknown metric");
}

unruh::SweepAxis to_cpp(unruh_axis a) {
  switch (a) {
    case UNRUH_AXIS_U: return unruh::SweepAxis::u;
    case UNRUH_AXIS_KCUT: return unruh::SweepAxis::k_cut;
  }
  throw unruh::Error(unruh::ErrorCode::usage, "unknown sweep axis");
}

unruh::oracle::OracleConfig to_cpp(const unruh_oracle_config& c) { return {c.k_so, c.grid_s, c.grid_d, c.window}; }

template <typename F>
unruh_status scalar(double* out, F&& fn) noexcept {
  UNRUH_REQUIRE(out);
  return guarded([&] { *out = fn(); });
}

}  // namespace

extern "C" {

const char* unruh_version(void) { return "1.0.0"; }

const char* unruh_status_string(unruh_status status) {
  switch (status) {
    case UNRUH_OK: return "ok";
    case UNRUH_ERR_NULL_ARGUMENT: return "null_argument";
    case UNRUH_ERR_INDEX: return "index_out_of_range";
    case UNRUH_ERR_OUT_OF_MEMORY: return "out_of_memory";
    case UNRUH_ERR_INTERNAL: return "internal_error";
    default: break;
  }
  if (status >= UNRUH_ERR_DOMAIN && status <= UNRUH_ERR_USAGE) {
    return unruh::to_string(static_cast<unruh::ErrorCode>(static_cast<int>(status)));
  }
  return "unknown_status";
}

const char* unruh_last_error(void) { return last_error.c_str(); }

unruh_status unruh_context_create(unruh_context** out) {
  UNRUH_REQUIRE(out);
  return guarded([&] { *out = new unruh_context{}; });
}

unruh_status unruh_context_clone(const unruh_context* ctx, unruh_context** out) {
  UNRUH_REQUIRE(ctx);
  UNRUH_REQUIRE(out);
  return guarded([&] { *out = new unruh_context(*ctx); });
}

void unruh_context_destroy(unruh_context* ctx) { delete ctx; }

unruh_status unruh_context_get(const unruh_context* ctx, unruh_context_values* out) {
  UNRUH_REQUIRE(ctx);
  UNRUH_REQUIRE(out);
  const auto& p = ctx->params;
  const auto& q = ctx->detector.quad;
  *out = {p.u,          p.delta,     p.alpha.real(),     p.alpha.imag(), p.beta,       p.phi,
          ctx->detector.k_cut, q.rel_tol, q.abs_tol, q.max_subdivisions, q.edge_panels, ctx->threads};
  return UNRUH_OK;
}

unruh_status unruh_context_set_channel(unruh_context* ctx, double u, double delta) {
  UNRUH_REQUIRE(ctx);
  return guarded([&] {
    unruh::ChannelParams p = ctx->params;
    p.u = u;
    p.delta = delta;
    unruh::validate(p);
    ctx->params = p;
  });
}

unruh_status unruh_context_set_amplitudes(unruh_context* ctx, double alpha_re, double alpha_im, double beta) {
  UNRUH_REQUIRE(ctx);
  return guarded([&] {
    unruh::ChannelParams p = ctx->params;
    p.alpha = {alpha_re, alpha_im};
    p.beta = beta;
    unruh::validate(p);
    ctx->params = p;
  });
}

unruh_status unruh_context_set_phase(unruh_context* ctx, double phi) {
  UNRUH_REQUIRE(ctx);
  return guarded([&] {
    unruh::ChannelParams p = ctx->params;
    p.phi = phi;
    unruh::validate(p);
    ctx->params = p;
  });
}

unruh_status unruh_context_set_cutoff(unruh_context* ctx, double k_cut) {
  UNRUH_REQUIRE(ctx);
  return guarded([&] {
    unruh::DetectorConfig d = ctx->detector;
    d.k_cut = k_cut;
    unruh::validate(d, ctx->params);
    ctx->detector = d;
  });
}

unruh_status unruh_context_set_quadrature(unruh_context* ctx, double rel_tol, double abs_tol,
                                          size_t max_subdivisions, size_t edge_panels) {
  UNRUH_REQUIRE(ctx);
  return guarded([&] {
    const unruh::QuadratureConfig q{rel_tol, abs_tol, max_subdivisions, edge_panels};
    unruh::validate(q);
    ctx->detector.quad = q;
  });
}

unruh_status unruh_context_set_threads(unruh_context* ctx, unsigned threads) {
  UNRUH_REQUIRE(ctx);
  ctx->threads = threads;
  return UNRUH_OK;
}

unruh_status unruh_compute_observables(const unruh_context* ctx, unruh_observables* out) {
  UNRUH_REQUIRE(ctx);
  UNRUH_REQUIRE(out);
  return guarded([&] { *out = to_c(unruh::compute_observables(ctx->params, ctx->detector)); });
}

unruh_status unruh_sweep_run(const unruh_context* ctx, unruh_axis axis, const double* values, size_t n,
                             unruh_sweep** out) {
  UNRUH_REQUIRE(ctx);
  UNRUH_REQUIRE(values);
  UNRUH_REQUIRE(out);
  return guarded([&] {
    const auto cpp_axis = to_cpp(axis);
    auto sweep = std::make_unique<unruh_sweep>();
    sweep->rows = unruh::sweep_observables(ctx->params, ctx->detector, cpp_axis, {values, n}, ctx->threads);
    *out = sweep.release();
  });
}

size_t unruh_sweep_size(const unruh_sweep* sweep) { return sweep ? sweep->rows.size() : 0; }

unruh_status unruh_sweep_get_row(const unruh_sweep* sweep, size_t index, unruh_sweep_row* out) {
  UNRUH_REQUIRE(sweep);
  UNRUH_REQUIRE(out);
  if (index >= sweep->rows.size()) return fail(UNRUH_ERR_INDEX, "sweep row index out of range");
  const auto& r = sweep->rows[index];
  *out = {r.params.u, r.params.delta, r.k_cut, to_c(r.obs), r.note.empty() ? 1 : 0, r.note.c_str()};
  return UNRUH_OK;
}

void unruh_sweep_destroy(unruh_sweep* sweep) { delete sweep; }

unruh_status unruh_scan_metric(const unruh_context* ctx, unruh_metric metric, const double* grid, size_t n,
                               unruh_curve** out) {
  UNRUH_REQUIRE(ctx);
  UNRUH_REQUIRE(out);
  if (n > 0) UNRUH_REQUIRE(grid);
  return guarded([&] {
    auto curve = std::make_unique<unruh_curve>();
    curve->curve = unruh::scan_metric(ctx->params, ctx->detector.quad, to_cpp(metric), {grid, n}, ctx->threads);
    *out = curve.release();
  });
}

size_t unruh_curve_size(const unruh_curve* curve) { return curve ? curve->curve.points.size() : 0; }

unruh_status unruh_curve_get_point(const unruh_curve* curve, size_t index, unruh_curve_point* out) {
  UNRUH_REQUIRE(curve);
  UNRUH_REQUIRE(out);
  if (index >= curve->curve.points.size()) return fail(UNRUH_ERR_INDEX, "curve point index out of range");
  const auto& p = curve->curve.points[index];
  *out = {p.k_cut, p.metric, p.error_estimate, p.note.c_str()};
  return UNRUH_OK;
}

void unruh_curve_destroy(unruh_curve* curve) { delete curve; }

unruh_status unruh_find_optimal_cutoff(const unruh_context* ctx, unruh_metric metric, double search_lo,
                                       double search_hi, double x_tol, size_t scan_points, unruh_optimum* out,
                                       unruh_curve** scan_out) {
  UNRUH_REQUIRE(ctx);
  UNRUH_REQUIRE(out);
  return guarded([&] {
    unruh::OptimizerConfig cfg;
    if (scan_points != 0) cfg.scan_points = scan_points;
    cfg.threads = ctx->threads;
    auto r = unruh::find_optimal_cutoff(ctx->params, ctx->detector.quad, to_cpp(metric), search_lo, search_hi, x_tol,
                                        cfg);
    *out = {r.k_opt,      r.metric_at_opt,  r.error_at_opt, r.bracket_lo, r.bracket_hi, r.converged ? 1 : 0,
            static_cast<unruh_optimize_status>(static_cast<int>(r.status)), r.iterations};
    if (scan_out != nullptr) {
      auto curve = std::make_unique<unruh_curve>();
      curve->curve = std::move(r.scan);
      *scan_out = curve.release();
    }
  });
}

void unruh_oracle_config_default(unruh_oracle_config* cfg) {
  if (cfg == nullptr) return;
  const unruh::oracle::OracleConfig d;
  *cfg = {d.k_so, d.grid_s, d.grid_d, d.window};
}

unruh_status unruh_oracle_triple(const unruh_context* ctx, const unruh_oracle_config* cfg,
                                 unruh_oracle_result* out) {
  UNRUH_REQUIRE(ctx);
  UNRUH_REQUIRE(cfg);
  UNRUH_REQUIRE(out);
  return guarded([&] {
    const auto r = unruh::oracle::triple_integrals(ctx->params, ctx->detector, to_cpp(*cfg));
    *out = {r.lo_strength, r.variance, r.relative_resolution};
  });
}

unruh_status unruh_oracle_exact_lo_strength(const unruh_context* ctx, const unruh_oracle_config* cfg, double* out) {
  UNRUH_REQUIRE(ctx);
  UNRUH_REQUIRE(cfg);
  return scalar(out, [&] { return unruh::oracle::lo_strength_exact(ctx->params, ctx->detector, to_cpp(*cfg)); });
}

unruh_status unruh_rindler_to_minkowski(double tau, double xi, double a, double* t, double* x) {
  UNRUH_REQUIRE(t);
  UNRUH_REQUIRE(x);
  return guarded([&] {
    const auto m = unruh::rindler_to_minkowski({tau, xi, a});
    *t = m.t;
    *x = m.x;
  });
}

unruh_status unruh_thermal_weight_signal(double k, double* out) {
  return scalar(out, [&] { return unruh::thermal_weight_signal(k); });
}

unruh_status unruh_thermal_weight_variance(double k, double* out) {
  return scalar(out, [&] { return unruh::thermal_weight_variance(k); });
}

unruh_status unruh_mean_occupation(double k, double* out) {
  return scalar(out, [&] { return unruh::mean_occupation(k); });
}

unruh_status unruh_gamma_sq_magnitude(double k, double* out) {
  return scalar(out, [&] { return unruh::gamma_sq_magnitude(k); });
}

unruh_status unruh_gaussian_bracket(double k, double u, double delta, double terms[4]) {
  UNRUH_REQUIRE(terms);
  return guarded([&] {
    unruh::ChannelParams p;
    p.u = u;
    p.delta = delta;
    unruh::validate(p);
    if (!(k >= 0.0)) throw unruh::Error(unruh::ErrorCode::domain, "gaussian_bracket: k must be >= 0");
    const auto b = unruh::gaussian_bracket(k, p);
    terms[0] = b.t1;
    terms[1] = b.t2;
    terms[2] = b.t3;
    terms[3] = b.total;
  });
}

unruh_status unruh_truncation_limit(double u, double delta, double tail_tol, double* out) {
  return scalar(out, [&] {
    unruh::ChannelParams p;
    p.u = u;
    p.delta = delta;
    unruh::validate(p);
    return unruh::truncation_limit(p, tail_tol);
  });
}

unruh_status unruh_asymptotic_lo_strength(double u, double* out) {
  return scalar(out, [&] { return unruh::asymptotic_lo_strength(u); });
}

unruh_status unruh_asymptotic_variance(double u, double* out) {
  return scalar(out, [&] { return unruh::asymptotic_variance(u); });
}

}  // extern "C"
