#ifndef UNRUH_ERROR_HPP
#define UNRUH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace unruh {

// Numeric values are shared with the C API status codes in unruh.h.
enum class ErrorCode : int {
  domain = 1,
  range = 2,
  convergence = 3,
  evaluation = 4,
  degenerate_channel = 5,
  optimization = 6,
  resolution = 7,
  usage = 8,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

// Adaptive integration ran out of panels. The best estimate so far travels
// with the exception so callers can decide whether it is usable.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double best_value, double error_estimate)
      : Error(ErrorCode::convergence, what), best_value_(best_value), error_estimate_(error_estimate) {}
  double best_value() const noexcept { return best_value_; }
  double error_estimate() const noexcept { return error_estimate_; }

private:
  double best_value_;
  double error_estimate_;
};

class EvaluationError : public Error {
public:
  EvaluationError(const std::string& what, double abscissa)
      : Error(ErrorCode::evaluation, what), abscissa_(abscissa) {}
  double abscissa() const noexcept { return abscissa_; }

private:
  double abscissa_;
};

class ResolutionError : public Error {
public:
  ResolutionError(const std::string& what, double relative_discrepancy)
      : Error(ErrorCode::resolution, what), relative_discrepancy_(relative_discrepancy) {}
  double relative_discrepancy() const noexcept { return relative_discrepancy_; }

private:
  double relative_discrepancy_;
};

}  // namespace unruh

#endif
