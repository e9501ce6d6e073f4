#include "unruh/error.hpp"

namespace unruh {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::domain: return "domain_error";
    case ErrorCode::range: return "range_error";
    case ErrorCode::convergence: return "convergence_error";
    case ErrorCode::evaluation: return "evaluation_error";
    case ErrorCode::degenerate_channel: return "degenerate_channel";
    case ErrorCode::optimization: return "optimization_error";
    case ErrorCode::resolution: return "resolution_error";
    case ErrorCode::usage: return "usage_error";
  }
  return "unknown_error";
}

}  // namespace unruh
