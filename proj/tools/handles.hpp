#ifndef UNRUH_TOOLS_HANDLES_HPP
#define UNRUH_TOOLS_HANDLES_HPP

// Owning wrappers for the C API handles plus an exception carrying a status.

#include <memory>
#include <stdexcept>
#include <string>

#include "unruh/unruh.h"

namespace unruh_cli {

class ApiError : public std::runtime_error {
public:
  ApiError(unruh_status status, const std::string& what) : std::runtime_error(what), status_(status) {}
  unruh_status status() const noexcept { return status_; }

private:
  unruh_status status_;
};

inline void check(unruh_status status) {
  if (status != UNRUH_OK) throw ApiError(status, unruh_last_error());
}

struct ContextDeleter {
  void operator()(unruh_context* c) const noexcept { unruh_context_destroy(c); }
};
struct SweepDeleter {
  void operator()(unruh_sweep* s) const noexcept { unruh_sweep_destroy(s); }
};
struct CurveDeleter {
  void operator()(unruh_curve* c) const noexcept { unruh_curve_destroy(c); }
};

using Context = std::unique_ptr<unruh_context, ContextDeleter>;
using Sweep = std::unique_ptr<unruh_sweep, SweepDeleter>;
using Curve = std::unique_ptr<unruh_curve, CurveDeleter>;

inline Context make_context() {
  unruh_context* raw = nullptr;
  check(unruh_context_create(&raw));
  return Context(raw);
}

}  // namespace unruh_cli

#endif
