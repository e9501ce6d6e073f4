#include "unruh/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "parallel.hpp"
#include "unruh/error.hpp"

namespace unruh {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPlateauFactor = 10.0;
// 1/phi and 1/phi^2.
constexpr double kInvGolden = 0.6180339887498948482;
constexpr double kInvGolden2 = 0.3819660112501051518;

bool maximizes(Metric metric) { return metric == Metric::snr_gain || metric == Metric::i_norm; }

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw Error(ErrorCode::usage, "scan_metric: empty k_cut grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < kMinCutoff) {
      std::ostringstream os;
      os << "scan_metric: grid value " << grid[i] << " must be finite and >= " << kMinCutoff;
      throw Error(ErrorCode::usage, os.str());
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) throw Error(ErrorCode::usage, "scan_metric: grid must be strictly increasing");
  }
}

std::string describe(const Error& e) { return std::string(to_string(e.code())) + ": " + e.what(); }

}  // namespace

std::string_view to_string(Metric metric) noexcept {
  switch (metric) {
    case Metric::snr_gain: return "snr_gain";
    case Metric::conditional_variance: return "conditional_variance";
    case Metric::i_norm: return "i_norm";
    case Metric::v_bar: return "v_bar";
  }
  return "unknown";
}

std::optional<Metric> parse_metric(std::string_view name) noexcept {
  if (name == "snr_gain" || name == "snr") return Metric::snr_gain;
  if (name == "conditional_variance" || name == "cv" || name == "v_c") return Metric::conditional_variance;
  if (name == "i_norm") return Metric::i_norm;
  if (name == "v_bar") return Metric::v_bar;
  return std::nullopt;
}

std::string_view to_string(OptimizeStatus status) noexcept {
  switch (status) {
    case OptimizeStatus::converged: return "converged";
    case OptimizeStatus::plateau: return "plateau";
    case OptimizeStatus::boundary: return "boundary";
  }
  return "unknown";
}

ValueWithError evaluate_metric(const ChannelParams& params, const DetectorConfig& det, Metric metric) {
  const Observables o = compute_observables(params, det);
  switch (metric) {
    case Metric::snr_gain:
      return {o.snr_gain, o.snr_gain * (o.i_err / o.i_norm + o.v_err / o.v_bar)};
    case Metric::conditional_variance: return {o.v_c, o.v_err + o.i_err};
    case Metric::i_norm: return {o.i_norm, o.i_err};
    case Metric::v_bar: return {o.v_bar, o.v_err};
  }
  return {kNaN, kNaN};
}

MetricCurve scan_metric(const ChannelParams& params, const QuadratureConfig& quad, Metric metric,
                        std::span<const double> grid, unsigned threads) {
  check_grid(grid);
  MetricCurve curve;
  curve.params = params;
  curve.metric = metric;
  curve.points.resize(grid.size());
  detail::parallel_for(grid.size(), threads, [&](std::size_t i) {
    CurvePoint& pt = curve.points[i];
    pt.k_cut = grid[i];
    try {
      const auto r = evaluate_metric(params, DetectorConfig{grid[i], quad}, metric);
      pt.metric = r.value;
      pt.error_estimate = r.error;
    } catch (const Error& e) {
      pt.metric = kNaN;
      pt.error_estimate = kNaN;
      pt.note = describe(e);
    }
  });
  return curve;
}

OptimizeResult find_optimal_cutoff(const ChannelParams& params, const QuadratureConfig& quad, Metric metric,
                                   double search_lo, double search_hi, double x_tol, const OptimizerConfig& config) {
  if (!(search_lo >= kMinCutoff) || !(search_hi > search_lo) || !std::isfinite(search_hi)) {
    throw Error(ErrorCode::usage, "find_optimal_cutoff: need 1e-8 <= search_lo < search_hi");
  }
  if (!(x_tol > 0.0)) throw Error(ErrorCode::usage, "find_optimal_cutoff: x_tol must be > 0");
  if (config.scan_points < 3) throw Error(ErrorCode::usage, "find_optimal_cutoff: scan needs at least 3 points");

  const double sign = maximizes(metric) ? -1.0 : 1.0;
  OptimizeResult result;
  const std::vector<double> grid = log_grid(search_lo, search_hi, config.scan_points);
  result.scan = scan_metric(params, quad, metric, grid, config.threads);

  std::vector<std::size_t> valid;
  for (std::size_t i = 0; i < result.scan.points.size(); ++i) {
    if (std::isfinite(result.scan.points[i].metric)) valid.push_back(i);
  }
  if (2 * valid.size() < result.scan.points.size()) {
    std::ostringstream os;
    os << "find_optimal_cutoff: " << result.scan.points.size() - valid.size() << " of " << result.scan.points.size()
       << " scan points failed";
    for (const auto& p : result.scan.points) {
      if (!p.note.empty()) {
        os << " (first failure: " << p.note << ")";
        break;
      }
    }
    throw Error(ErrorCode::optimization, os.str());
  }

  double lo_val = std::numeric_limits<double>::infinity();
  double hi_val = -lo_val;
  double max_err = 0.0;
  std::size_t best = 0;  // position within `valid`
  for (std::size_t j = 0; j < valid.size(); ++j) {
    const CurvePoint& p = result.scan.points[valid[j]];
    lo_val = std::min(lo_val, p.metric);
    hi_val = std::max(hi_val, p.metric);
    max_err = std::max(max_err, p.error_estimate);
    if (sign * p.metric < sign * result.scan.points[valid[best]].metric) best = j;
  }

  auto evaluate = [&](double k) {
    try {
      return evaluate_metric(params, DetectorConfig{k, quad}, metric);
    } catch (const Error& e) {
      std::ostringstream os;
      os << "find_optimal_cutoff: refinement failed at k_cut = " << k << " (" << describe(e) << ")";
      throw Error(ErrorCode::optimization, os.str());
    }
  };

  if (hi_val - lo_val <= kPlateauFactor * max_err) {
    result.status = OptimizeStatus::plateau;
    result.k_opt = 0.5 * (search_lo + search_hi);
    result.bracket_lo = search_lo;
    result.bracket_hi = search_hi;
    const auto r = evaluate(result.k_opt);
    result.metric_at_opt = r.value;
    result.error_at_opt = r.error;
    result.converged = false;
    return result;
  }

  if (best == 0 || best + 1 == valid.size()) {
    const std::size_t inner = best == 0 ? valid[1] : valid[valid.size() - 2];
    const CurvePoint& edge = result.scan.points[valid[best]];
    result.status = OptimizeStatus::boundary;
    result.k_opt = edge.k_cut;
    result.metric_at_opt = edge.metric;
    result.error_at_opt = edge.error_estimate;
    result.bracket_lo = std::min(edge.k_cut, result.scan.points[inner].k_cut);
    result.bracket_hi = std::max(edge.k_cut, result.scan.points[inner].k_cut);
    result.converged = false;
    return result;
  }

  // Golden-section shrinkage between the scan neighbours of the best point.
  double a = result.scan.points[valid[best - 1]].k_cut;
  double b = result.scan.points[valid[best + 1]].k_cut;
  double c = a + kInvGolden2 * (b - a);
  double d = a + kInvGolden * (b - a);
  double fc = sign * evaluate(c).value;
  double fd = sign * evaluate(d).value;
  std::size_t iter = 0;
  while (b - a > x_tol && iter < config.max_iterations) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = a + kInvGolden2 * (b - a);
      fc = sign * evaluate(c).value;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvGolden * (b - a);
      fd = sign * evaluate(d).value;
    }
    ++iter;
  }

  result.iterations = iter;
  result.bracket_lo = a;
  result.bracket_hi = b;
  result.k_opt = 0.5 * (a + b);
  const auto r = evaluate(result.k_opt);
  result.metric_at_opt = r.value;
  result.error_at_opt = r.error;
  result.converged = b - a <= x_tol;
  result.status = OptimizeStatus::converged;
  return result;
}

std::vector<SweepRow> sweep_observables(const ChannelParams& base, const DetectorConfig& det, SweepAxis axis,
                                        std::span<const double> values, unsigned threads) {
  if (values.empty()) throw Error(ErrorCode::usage, "sweep_observables: empty axis");
  std::vector<SweepRow> rows(values.size());
  detail::parallel_for(values.size(), threads, [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.params = base;
    DetectorConfig point = det;
    if (axis == SweepAxis::u) {
      row.params.u = values[i];
    } else {
      point.k_cut = values[i];
    }
    row.k_cut = point.k_cut;
    try {
      row.obs = compute_observables(row.params, point);
    } catch (const Error& e) {
      row.obs = Observables{kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, 0, kNaN};
      row.note = describe(e);
    }
  });
  return rows;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo)) throw Error(ErrorCode::usage, "log_grid: need 0 < lo < hi");
  if (n < 2) throw Error(ErrorCode::usage, "log_grid: need at least 2 points");
  std::vector<double> out(n);
  const double span = std::log(hi / lo);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo * std::exp(span * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  if (!(hi > lo)) throw Error(ErrorCode::usage, "linear_grid: need lo < hi");
  if (n < 2) throw Error(ErrorCode::usage, "linear_grid: need at least 2 points");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = hi;
  return out;
}

}  // namespace unruh
