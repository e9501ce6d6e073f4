#ifndef UNRUH_OBSERVABLES_HPP
#define UNRUH_OBSERVABLES_HPP

#include <cstddef>

#include "unruh/channel_math.hpp"
#include "unruh/quadrature.hpp"

namespace unruh {

inline constexpr double kMinCutoff = 1e-8;
inline constexpr double kDegenerateStrength = 1e-30;
inline constexpr double kTailTolerance = 1e-16;

struct DetectorConfig {
  double k_cut = 0.1;  // omega_cut / a
  QuadratureConfig quad{};
};

void validate(const DetectorConfig& det, const ChannelParams& params);

struct Observables {
  double i_norm = 0.0;    // I / beta^2
  double x_bar = 0.0;     // normalized signal expectation
  double v_bar = 0.0;     // normalized variance V / I
  double snr_gain = 0.0;  // SNR_out / SNR_in
  double v_c = 0.0;       // conditional variance
  double i_err = 0.0;
  double v_err = 0.0;
  std::size_t evaluations = 0;
  double truncation_k = 0.0;
};

struct ValueWithError {
  double value = 0.0;
  double error = 0.0;
};

ValueWithError lo_strength(const ChannelParams& params, const DetectorConfig& det);

/// Throws a degenerate-channel error when the LO strength underflows.
ValueWithError variance_norm(const ChannelParams& params, const DetectorConfig& det);

/// sqrt(i_norm) * 2 Re(alpha e^{i phi}).
double signal_expectation(const ChannelParams& params, double i_norm);

double snr_gain(const ChannelParams& params, const DetectorConfig& det);

/// Computed as v_bar - i_norm.
double conditional_variance(const ChannelParams& params, const DetectorConfig& det);

/// All observables from a single fused pass over the bracket.
Observables compute_observables(const ChannelParams& params, const DetectorConfig& det);

// Closed forms valid well before the horizon (u < 0, |u| >> delta).
double asymptotic_lo_strength(double u);
double asymptotic_variance(double u);

}  // namespace unruh

#endif
