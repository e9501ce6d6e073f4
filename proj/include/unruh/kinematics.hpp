#ifndef UNRUH_KINEMATICS_HPP
#define UNRUH_KINEMATICS_HPP

// Minkowski <-> Rindler geometry for the right wedge. Natural units
// (hbar = c = k_B = 1); the proper acceleration a is the only scale.

namespace unruh {

struct RindlerPoint {
  double tau = 0.0;  // proper-time-like coordinate
  double xi = 0.0;   // spatial Rindler coordinate
  double a = 1.0;    // proper acceleration, must be > 0
};

struct MinkowskiPoint {
  double t = 0.0;
  double x = 0.0;
};

/// t = e^{a xi} sinh(a tau) / a, x = e^{a xi} cosh(a tau) / a.
/// Throws domain error for a <= 0 or non-finite input and range error when
/// an intermediate exceeds the largest finite double.
MinkowskiPoint rindler_to_minkowski(const RindlerPoint& p);

/// Retarded coordinate t - x; zero on the future horizon.
constexpr double null_offset(const MinkowskiPoint& p) noexcept { return p.t - p.x; }

}  // namespace unruh

#endif
