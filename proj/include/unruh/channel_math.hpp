#ifndef UNRUH_CHANNEL_MATH_HPP
#define UNRUH_CHANNEL_MATH_HPP

#include <cmath>
#include <complex>

namespace unruh {

// Scenario parameters reduced to dimensionless form. u = k_so (t - x) is the
// emission offset relative to the receiver's horizon, delta = k_so / sigma is
// the packet sharpness.
struct ChannelParams {
  double u = 0.0;
  double delta = 10.0;
  std::complex<double> alpha{1.0, 0.0};  // signal amplitude
  double beta = 1000.0;                  // local-oscillator amplitude
  double phi = 0.0;                      // quadrature phase [rad]
};

/// Throws a domain error unless delta >= 1 and all fields are finite.
void validate(const ChannelParams& params);

// Three addends of the Gaussian bracket shared by the LO-strength and
// variance integrands. total is assembled in a cancellation-free form and is
// never negative.
struct BracketTerms {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
  double total = 0.0;
};

/// 1 - e^{-x} without cancellation for small x.
inline double one_minus_exp_neg(double x) noexcept { return -std::expm1(-x); }

/// 1 / (1 - e^{-2 pi k}); k > 0.
double thermal_weight_signal(double k);

/// (1 + e^{-2 pi k}) / (1 - e^{-2 pi k})^2; k > 0.
double thermal_weight_variance(double k);

/// Bose-Einstein occupation 1 / (e^{2 pi k} - 1); k > 0.
double mean_occupation(double k);

/// |Gamma(1 - i k)|^2 = pi k / sinh(pi k); k >= 0, value 1 at k = 0.
double gamma_sq_magnitude(double k);

BracketTerms gaussian_bracket(double k, const ChannelParams& params);

}  // namespace unruh

#endif
