#ifndef UNRUH_ORACLE_HPP
#define UNRUH_ORACLE_HPP

#include <cstddef>

#include "unruh/channel_math.hpp"
#include "unruh/observables.hpp"

// Brute-force evaluations that restore the carrier wave number k_so and the
// bandwidth sigma = k_so / delta which the reduced formulas eliminate. The
// k_s integrals are done numerically on a composite Simpson grid rather than
// in closed form, so these routines share no integration code with the
// reduced path.

namespace unruh::oracle {

struct OracleConfig {
  double k_so = 200.0;          // carrier wave number in units of a
  std::size_t grid_s = 4001;    // abscissae for the k_s integral
  std::size_t grid_d = 2001;    // abscissae for the k_d integral (log-spaced)
  double window = 8.0;          // k_s support half-width in units of sigma
};

void validate(const OracleConfig& cfg, const ChannelParams& params);

struct OracleIntegrals {
  double lo_strength = 0.0;  // I / beta^2
  double variance = 0.0;     // V / beta^2
  double relative_resolution = 0.0;  // half-grid Richardson discrepancy
};

/// Both I and V from the approximated Bogoliubov products; the k_s, k_s'
/// double integral is evaluated as |G(k_d)|^2 of a single complex integral.
/// Throws ResolutionError when the half-grid discrepancy exceeds 1e-6 or
/// grid_s under-resolves the k_s oscillation.
OracleIntegrals triple_integrals(const ChannelParams& params, const DetectorConfig& det, const OracleConfig& cfg);

double lo_strength_triple(const ChannelParams& params, const DetectorConfig& det, const OracleConfig& cfg);
double variance_triple(const ChannelParams& params, const DetectorConfig& det, const OracleConfig& cfg);

/// I / beta^2 with the exact factor k_s^{i k_d - 1/2}; no phase approximation.
/// Requires cfg.k_so >= 10 delta.
double lo_strength_exact(const ChannelParams& params, const DetectorConfig& det, const OracleConfig& cfg);

inline constexpr double kResolutionLimit = 1e-6;
inline constexpr double kPointsPerOscillation = 20.0;

}  // namespace unruh::oracle

#endif
