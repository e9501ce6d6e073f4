#include "unruh/kinematics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "unruh/error.hpp"

namespace unruh {

namespace {

[[noreturn]] void overflow(const char* what, double argument) {
  std::ostringstream os;
  os << "rindler_to_minkowski: " << what << " overflows double precision (argument " << argument << ")";
  throw Error(ErrorCode::range, os.str());
}

}  // namespace

MinkowskiPoint rindler_to_minkowski(const RindlerPoint& p) {
  if (!(p.a > 0.0) || !std::isfinite(p.a)) {
    throw Error(ErrorCode::domain, "rindler_to_minkowski: proper acceleration must be finite and > 0");
  }
  if (!std::isfinite(p.tau) || !std::isfinite(p.xi)) {
    throw Error(ErrorCode::domain, "rindler_to_minkowski: tau and xi must be finite");
  }
  const double a_xi = p.a * p.xi;
  const double a_tau = p.a * p.tau;

  const double radius = std::exp(a_xi) / p.a;
  if (!std::isfinite(radius)) overflow("e^{a xi}/a", a_xi);
  const double ch = std::cosh(a_tau);
  if (!std::isfinite(ch)) overflow("cosh(a tau)", a_tau);

  const MinkowskiPoint out{radius * std::sinh(a_tau), radius * ch};
  if (!std::isfinite(out.x) || !std::isfinite(out.t)) overflow("e^{a xi} cosh(a tau)/a", a_xi + std::abs(a_tau));
  return out;
}

}  // namespace unruh
