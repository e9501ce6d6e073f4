#include "unruh/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include "parallel.hpp"
#include "unruh/error.hpp"

namespace unruh::oracle {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

enum class PhaseModel { approximated, exact };

// Composite Simpson on a uniform grid of any size >= 2; an even point count
// closes with the 3/8 rule on the last three intervals.
template <typename T>
T simpson(const std::vector<T>& y, double h) {
  const std::size_t n = y.size();
  if (n == 2) return 0.5 * h * (y[0] + y[1]);
  std::size_t m = n;
  T tail{};
  if (n % 2 == 0) {
    m = n - 3;
    tail = 3.0 * h / 8.0 * (y[n - 4] + 3.0 * y[n - 3] + 3.0 * y[n - 2] + y[n - 1]);
    if (m == 1) return tail;
  }
  T odd{};
  T even{};
  for (std::size_t i = 1; i + 1 < m; i += 2) odd += y[i];
  for (std::size_t i = 2; i + 1 < m; i += 2) even += y[i];
  return h / 3.0 * (y[0] + y[m - 1] + 4.0 * odd + 2.0 * even) + tail;
}

template <typename T>
std::vector<T> every_other(const std::vector<T>& y) {
  std::vector<T> out;
  out.reserve(y.size() / 2 + 1);
  for (std::size_t i = 0; i < y.size(); i += 2) out.push_back(y[i]);
  return out;
}

struct Support {
  double lo = 0.0;
  double hi = 0.0;
  double k_max = 0.0;
};

Support support(const ChannelParams& params, const OracleConfig& cfg) {
  const double sigma = cfg.k_so / params.delta;
  Support s;
  s.lo = std::max(cfg.k_so - cfg.window * sigma, 1e-6 * cfg.k_so);
  s.hi = cfg.k_so + cfg.window * sigma;
  // The k_d Gaussians have standard deviation delta/2; window*delta covers
  // 2*window of them.
  s.k_max = std::max(std::abs(params.u) + cfg.window * params.delta, 10.0);
  return s;
}

void check_oscillation(const ChannelParams& params, const OracleConfig& cfg, const Support& s, PhaseModel model) {
  const double shift = std::abs(params.u / cfg.k_so) * (s.hi - s.lo);
  const double carrier = model == PhaseModel::exact ? s.k_max * std::log(s.hi / s.lo)
                                                    : s.k_max * (s.hi - s.lo) / cfg.k_so;
  const double per_osc = static_cast<double>(cfg.grid_s - 1) * 2.0 * kPi / (carrier + shift);
  if (per_osc < kPointsPerOscillation) {
    std::ostringstream os;
    os << "oracle: grid_s = " << cfg.grid_s << " gives " << per_osc << " abscissae per oscillation of the k_s phase"
       << " (need " << kPointsPerOscillation << ")";
    throw ResolutionError(os.str(), 1.0 / per_osc);
  }
}

OracleIntegrals run(const ChannelParams& params, const DetectorConfig& det, const OracleConfig& cfg, PhaseModel model) {
  validate(params);
  validate(cfg, params);
  if (!(det.k_cut >= kMinCutoff)) throw Error(ErrorCode::domain, "oracle: k_cut must be >= 1e-8");
  const Support sup = support(params, cfg);
  if (!(det.k_cut < sup.k_max)) throw Error(ErrorCode::domain, "oracle: k_cut above the k_d support");
  check_oscillation(params, cfg, sup, model);

  const double sigma = cfg.k_so / params.delta;
  const double shift = params.u / cfg.k_so;  // t - x in units where a = 1
  const double norm = std::pow(2.0 * kPi * sigma * sigma, -0.25);

  // k_s-only factors, shared by every k_d row.
  const std::size_t ns = cfg.grid_s;
  const double hs = (sup.hi - sup.lo) / static_cast<double>(ns - 1);
  std::vector<double> ks(ns);
  std::vector<double> log_ks(ns);
  std::vector<cplx> forward(ns);   // f_D e^{+i k_s (t-x)} times amplitude
  std::vector<cplx> backward(ns);  // f_D e^{-i k_s (t-x)} times amplitude
  for (std::size_t i = 0; i < ns; ++i) {
    ks[i] = sup.lo + hs * static_cast<double>(i);
    log_ks[i] = std::log(ks[i]);
    const double dk = ks[i] - cfg.k_so;
    double amp = norm * std::exp(-dk * dk / (4.0 * sigma * sigma));
    // The approximated products replace 1/sqrt(k_s k_s') by 1/k_so.
    amp *= model == PhaseModel::exact ? 1.0 / std::sqrt(ks[i]) : 1.0 / std::sqrt(cfg.k_so);
    forward[i] = std::polar(amp, ks[i] * shift);
    backward[i] = std::polar(amp, -ks[i] * shift);
  }

  const std::size_t nd = cfg.grid_d;
  const double s_lo = std::log(det.k_cut);
  const double hd = (std::log(sup.k_max) - s_lo) / static_cast<double>(nd - 1);
  std::vector<double> lo_full(nd), var_full(nd), lo_half(nd), var_half(nd);

  detail::parallel_for(nd, 0, [&](std::size_t j) {
    const double kd = std::exp(s_lo + hd * static_cast<double>(j));
    const double damp = std::exp(-kPi * kd);
    std::vector<cplx> row(ns);
    for (std::size_t i = 0; i < ns; ++i) {
      const double phase = model == PhaseModel::exact ? kd * log_ks[i] : ks[i] * kd / cfg.k_so;
      row[i] = std::polar(1.0, phase) * (forward[i] + damp * backward[i]);
    }
    // G(k_d) e^{-pi k_d / 2}; the common e^{pi k_d} is folded into the weights.
    const double g_full = std::norm(simpson(row, hs));
    const double g_half = std::norm(simpson(every_other(row), 2.0 * hs));

    const double one_minus = -std::expm1(-2.0 * kPi * kd);
    const double lo_weight = 1.0 / (2.0 * kPi * one_minus);
    const double var_weight = (1.0 + std::exp(-2.0 * kPi * kd)) / (2.0 * kPi * one_minus * one_minus);
    // Jacobian of k_d = e^s.
    lo_full[j] = kd * lo_weight * g_full;
    var_full[j] = kd * var_weight * g_full;
    lo_half[j] = kd * lo_weight * g_half;
    var_half[j] = kd * var_weight * g_half;
  });

  OracleIntegrals out;
  out.lo_strength = simpson(lo_full, hd);
  out.variance = simpson(var_full, hd);
  const double lo_coarse = simpson(every_other(lo_half), 2.0 * hd);
  const double var_coarse = simpson(every_other(var_half), 2.0 * hd);
  out.relative_resolution = std::max(std::abs(out.lo_strength - lo_coarse) / std::abs(out.lo_strength),
                                     std::abs(out.variance - var_coarse) / std::abs(out.variance));
  if (!(out.relative_resolution <= kResolutionLimit)) {
    std::ostringstream os;
    os << "oracle: half-grid discrepancy " << out.relative_resolution << " exceeds " << kResolutionLimit
       << " (grid_s = " << cfg.grid_s << ", grid_d = " << cfg.grid_d << ")";
    throw ResolutionError(os.str(), out.relative_resolution);
  }
  return out;
}

}  // namespace

void validate(const OracleConfig& cfg, const ChannelParams& params) {
  if (!(cfg.k_so > 0.0) || !std::isfinite(cfg.k_so) || !(cfg.k_so / params.delta > 0.0)) {
    throw Error(ErrorCode::domain, "oracle: k_so must be finite and > 0");
  }
  if (cfg.grid_s < 3 || cfg.grid_s % 2 == 0 || cfg.grid_d < 3 || cfg.grid_d % 2 == 0) {
    throw Error(ErrorCode::domain, "oracle: grid_s and grid_d must be odd and >= 3");
  }
  if (!(cfg.window > 0.0)) throw Error(ErrorCode::domain, "oracle: window must be > 0");
}

OracleIntegrals triple_integrals(const ChannelParams& params, const DetectorConfig& det, const OracleConfig& cfg) {
  return run(params, det, cfg, PhaseModel::approximated);
}

double lo_strength_triple(const ChannelParams& params, const DetectorConfig& det, const OracleConfig& cfg) {
  return triple_integrals(params, det, cfg).lo_strength;
}

double variance_triple(const ChannelParams& params, const DetectorConfig& det, const OracleConfig& cfg) {
  return triple_integrals(params, det, cfg).variance;
}

double lo_strength_exact(const ChannelParams& params, const DetectorConfig& det, const OracleConfig& cfg) {
  if (!(cfg.k_so >= 10.0 * params.delta)) {
    throw Error(ErrorCode::domain, "lo_strength_exact: requires k_so >= 10 delta");
  }
  return run(params, det, cfg, PhaseModel::exact).lo_strength;
}

}  // namespace unruh::oracle
