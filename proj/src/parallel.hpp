#ifndef UNRUH_SRC_PARALLEL_HPP
#define UNRUH_SRC_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace unruh::detail {

/// 0 means hardware concurrency; never more workers than tasks.
unsigned resolve_threads(unsigned requested, std::size_t tasks) noexcept;

/// Calls fn(i) for every i in [0, n). Indices are handed out dynamically, so
/// fn must write its result by index. The first exception thrown by any
/// worker is rethrown after all workers have joined.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace unruh::detail

#endif
