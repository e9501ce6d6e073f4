#include "unruh/channel_math.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "unruh/error.hpp"

namespace unruh {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive(double k, const char* fn) {
  if (!(k > 0.0)) {
    std::ostringstream os;
    os << fn << ": wave number must be > 0 (got " << k << ")";
    throw Error(ErrorCode::domain, os.str());
  }
}

}  // namespace

void validate(const ChannelParams& params) {
  if (!std::isfinite(params.u)) throw Error(ErrorCode::domain, "emission offset u must be finite");
  if (!(params.delta >= 1.0) || !std::isfinite(params.delta)) {
    std::ostringstream os;
    os << "packet sharpness delta must be finite and >= 1 (got " << params.delta << ")";
    throw Error(ErrorCode::domain, os.str());
  }
  if (!std::isfinite(params.alpha.real()) || !std::isfinite(params.alpha.imag()) || !std::isfinite(params.beta) ||
      !std::isfinite(params.phi)) {
    throw Error(ErrorCode::domain, "alpha, beta and phi must be finite");
  }
}

double thermal_weight_signal(double k) {
  require_positive(k, "thermal_weight_signal");
  return 1.0 / one_minus_exp_neg(kTwoPi * k);
}

double thermal_weight_variance(double k) {
  require_positive(k, "thermal_weight_variance");
  const double x = kTwoPi * k;
  const double denom = one_minus_exp_neg(x);
  return (1.0 + std::exp(-x)) / (denom * denom);
}

double mean_occupation(double k) {
  require_positive(k, "mean_occupation");
  // e^{-x} / (1 - e^{-x}) written as 1 / expm1(x).
  return 1.0 / std::expm1(kTwoPi * k);
}

double gamma_sq_magnitude(double k) {
  if (!(k >= 0.0)) {
    std::ostringstream os;
    os << "gamma_sq_magnitude: wave number must be >= 0 (got " << k << ")";
    throw Error(ErrorCode::domain, os.str());
  }
  const double x = std::numbers::pi * k;
  if (x < 1e-8) return 1.0 - x * x / 6.0;
  if (x > 20.0) return 2.0 * x * std::exp(-x) / one_minus_exp_neg(2.0 * x);
  return x / std::sinh(x);
}

BracketTerms gaussian_bracket(double k, const ChannelParams& params) {
  const double u = params.u;
  const double inv_d2 = 1.0 / (params.delta * params.delta);
  const double plus = (k + u) * (k + u) * inv_d2;
  const double minus = (k - u) * (k - u) * inv_d2;

  BracketTerms out;
  out.t1 = std::exp(-2.0 * plus);
  out.t3 = std::exp(-kTwoPi * k - 2.0 * minus);
  // sqrt(t1 t3), formed from the exponents so neither factor underflows alone.
  const double geo = std::exp(-std::numbers::pi * k - plus - minus);
  out.t2 = 2.0 * std::cos(2.0 * u) * geo;

  // t1 + t2 + t3 = (sqrt t1 - sqrt t3)^2 + 4 cos^2(u) sqrt(t1 t3): both
  // addends are non-negative, so no cancellation at the suppression points.
  const double diff = std::exp(-plus) - std::exp(-std::numbers::pi * k - minus);
  const double c = std::cos(u);
  out.total = diff * diff + 4.0 * c * c * geo;
  return out;
}

}  // namespace unruh
