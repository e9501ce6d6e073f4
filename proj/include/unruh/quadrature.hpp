#ifndef UNRUH_QUADRATURE_HPP
#define UNRUH_QUADRATURE_HPP

#include <array>
#include <cstddef>
#include <functional>

#include "unruh/channel_math.hpp"

namespace unruh {

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  std::size_t max_subdivisions = 2000;
  std::size_t edge_panels = 40;
};

void validate(const QuadratureConfig& config);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  double truncation_k = 0.0;
};

// Two integrals sharing abscissae; used when one expensive factor is common
// to both integrands.
struct PairQuadratureResult {
  std::array<double, 2> value{};
  std::array<double, 2> error_estimate{};
  std::size_t evaluations = 0;
  double truncation_k = 0.0;
};

inline constexpr double kTruncationWidths = 8.0;
inline constexpr double kTruncationFloor = 10.0;

/// Upper limit K_max = max(|u| + 8 delta, 10), pushed further out in steps
/// of delta until bracket * variance weight at K_max is below tail_tol.
double truncation_limit(const ChannelParams& params, double tail_tol);

using Integrand = std::function<double(double)>;
using PairIntegrand = std::function<std::array<double, 2>(double)>;

/// Integral of f over [k_cut, k_max]. The first config.edge_panels panels are
/// log-spaced on [k_cut, min(10 k_cut, k_max)]; everything is then refined
/// by global adaptive bisection using a 7/15-point Gauss-Kronrod pair.
///
/// Throws ConvergenceError (carrying the best estimate) when the tolerance
/// is not met within config.max_subdivisions panels, and EvaluationError
/// when f returns a non-finite value.
QuadratureResult integrate_lower_edge(const Integrand& f, double k_cut, const QuadratureConfig& config,
                                      double k_max);

/// Same panel strategy for a two-component integrand. A panel is refined
/// until both components meet their own tolerance.
PairQuadratureResult integrate_lower_edge(const PairIntegrand& f, double k_cut, const QuadratureConfig& config,
                                          double k_max);

}  // namespace unruh

#endif
