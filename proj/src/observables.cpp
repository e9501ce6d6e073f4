#include "unruh/observables.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "unruh/error.hpp"

namespace unruh {

namespace {

// sqrt(2/pi) sigma / k_so with sigma / k_so = 1 / delta.
double prefactor(const ChannelParams& params) { return std::sqrt(2.0 / std::numbers::pi) / params.delta; }

struct FusedIntegrals {
  PairQuadratureResult raw;
  double scale = 0.0;
};

// Component 0 carries the signal weight, component 1 the variance weight;
// both share one bracket evaluation per abscissa.
FusedIntegrals fused_integrals(const ChannelParams& params, const DetectorConfig& det) {
  validate(params);
  validate(det, params);
  const double k_max = truncation_limit(params, kTailTolerance);
  auto integrand = [&params](double k) -> std::array<double, 2> {
    const double b = gaussian_bracket(k, params).total;
    return {thermal_weight_signal(k) * b, thermal_weight_variance(k) * b};
  };
  return {integrate_lower_edge(PairIntegrand(integrand), det.k_cut, det.quad, k_max), prefactor(params)};
}

[[noreturn]] void degenerate(const ChannelParams& params, const DetectorConfig& det, double i_norm) {
  std::ostringstream os;
  os << "degenerate channel: LO strength " << i_norm << " below " << kDegenerateStrength << " at u = " << params.u
     << ", delta = " << params.delta << ", k_cut = " << det.k_cut << " (packet behind the horizon)";
  throw Error(ErrorCode::degenerate_channel, os.str());
}

}  // namespace

void validate(const DetectorConfig& det, const ChannelParams& params) {
  if (!(det.k_cut >= kMinCutoff) || !std::isfinite(det.k_cut)) {
    std::ostringstream os;
    os << "k_cut must be finite and >= " << kMinCutoff << " (got " << det.k_cut << ")";
    throw Error(ErrorCode::domain, os.str());
  }
  const double k_max = truncation_limit(params, kTailTolerance);
  if (!(det.k_cut < k_max)) {
    std::ostringstream os;
    os << "k_cut = " << det.k_cut << " is not below the truncation limit " << k_max;
    throw Error(ErrorCode::domain, os.str());
  }
  validate(det.quad);
}

ValueWithError lo_strength(const ChannelParams& params, const DetectorConfig& det) {
  validate(params);
  validate(det, params);
  const double k_max = truncation_limit(params, kTailTolerance);
  auto integrand = [&params](double k) { return thermal_weight_signal(k) * gaussian_bracket(k, params).total; };
  const auto r = integrate_lower_edge(Integrand(integrand), det.k_cut, det.quad, k_max);
  const double scale = prefactor(params);
  return {scale * r.value, scale * r.error_estimate};
}

ValueWithError variance_norm(const ChannelParams& params, const DetectorConfig& det) {
  const Observables obs = compute_observables(params, det);
  return {obs.v_bar, obs.v_err};
}

double signal_expectation(const ChannelParams& params, double i_norm) {
  if (!(i_norm >= 0.0)) throw Error(ErrorCode::domain, "signal_expectation: i_norm must be >= 0");
  const std::complex<double> rotated = params.alpha * std::polar(1.0, params.phi);
  return std::sqrt(i_norm) * 2.0 * rotated.real();
}

double snr_gain(const ChannelParams& params, const DetectorConfig& det) {
  return compute_observables(params, det).snr_gain;
}

double conditional_variance(const ChannelParams& params, const DetectorConfig& det) {
  return compute_observables(params, det).v_c;
}

Observables compute_observables(const ChannelParams& params, const DetectorConfig& det) {
  const FusedIntegrals fused = fused_integrals(params, det);
  const auto& value = fused.raw.value;
  const auto& error = fused.raw.error_estimate;

  Observables obs;
  obs.i_norm = fused.scale * value[0];
  obs.i_err = fused.scale * error[0];
  if (!(obs.i_norm >= kDegenerateStrength)) degenerate(params, det, obs.i_norm);

  // Prefactors cancel in the ratio.
  obs.v_bar = value[1] / value[0];
  obs.v_err = obs.v_bar * (error[1] / std::abs(value[1]) + error[0] / std::abs(value[0]));
  obs.snr_gain = obs.i_norm / obs.v_bar;
  obs.v_c = obs.v_bar - obs.i_norm;
  obs.x_bar = signal_expectation(params, obs.i_norm);
  obs.evaluations = fused.raw.evaluations;
  obs.truncation_k = fused.raw.truncation_k;
  return obs;
}

double asymptotic_lo_strength(double u) {
  if (!(u < 0.0)) throw Error(ErrorCode::domain, "asymptotic_lo_strength: closed form requires u < 0");
  return 1.0 / one_minus_exp_neg(2.0 * std::numbers::pi * std::abs(u));
}

double asymptotic_variance(double u) {
  if (!(u < 0.0)) throw Error(ErrorCode::domain, "asymptotic_variance: closed form requires u < 0");
  const double x = 2.0 * std::numbers::pi * std::abs(u);
  return (1.0 + std::exp(-x)) / one_minus_exp_neg(x);
}

}  // namespace unruh
