#ifndef UNRUH_OPTIMIZER_HPP
#define UNRUH_OPTIMIZER_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unruh/channel_math.hpp"
#include "unruh/observables.hpp"

namespace unruh {

enum class Metric { snr_gain, conditional_variance, i_norm, v_bar };

std::string_view to_string(Metric metric) noexcept;
std::optional<Metric> parse_metric(std::string_view name) noexcept;

struct CurvePoint {
  double k_cut = 0.0;
  double metric = 0.0;  // NaN when the evaluation failed
  double error_estimate = 0.0;
  std::string note;  // empty on success
};

struct MetricCurve {
  std::vector<CurvePoint> points;
  ChannelParams params;
  Metric metric = Metric::snr_gain;
};

/// Metric value and its propagated quadrature error at one cutoff.
ValueWithError evaluate_metric(const ChannelParams& params, const DetectorConfig& det, Metric metric);

/// One evaluation per grid point, spread over `threads` workers (0 picks the
/// hardware concurrency). Failures are recorded in the point, not thrown.
/// The grid must be non-empty, strictly increasing and >= kMinCutoff.
MetricCurve scan_metric(const ChannelParams& params, const QuadratureConfig& quad, Metric metric,
                        std::span<const double> grid, unsigned threads = 0);

enum class OptimizeStatus {
  converged,
  plateau,   // metric flat within 10x its error across the scan
  boundary,  // scan monotone; best point on the search boundary
};

std::string_view to_string(OptimizeStatus status) noexcept;

struct OptimizerConfig {
  std::size_t scan_points = 40;
  std::size_t max_iterations = 200;
  unsigned threads = 0;
};

struct OptimizeResult {
  double k_opt = 0.0;
  double metric_at_opt = 0.0;
  double error_at_opt = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  MetricCurve scan;
  bool converged = false;
  OptimizeStatus status = OptimizeStatus::converged;
  std::size_t iterations = 0;
};

/// Log-spaced scan over [search_lo, search_hi] to bracket the extremum, then
/// golden-section shrinkage to x_tol. snr_gain and i_norm are maximized,
/// conditional_variance and v_bar minimized.
OptimizeResult find_optimal_cutoff(const ChannelParams& params, const QuadratureConfig& quad, Metric metric,
                                   double search_lo, double search_hi, double x_tol,
                                   const OptimizerConfig& config = {});

enum class SweepAxis { u, k_cut };

struct SweepRow {
  ChannelParams params;
  double k_cut = 0.0;
  Observables obs;  // NaN fields when note is non-empty
  std::string note;
};

/// Full observables along one axis, computed in parallel, returned in input
/// order. Per-point failures are recorded in the row's note.
std::vector<SweepRow> sweep_observables(const ChannelParams& base, const DetectorConfig& det, SweepAxis axis,
                                        std::span<const double> values, unsigned threads = 0);

/// n log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t n);
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

}  // namespace unruh

#endif
