#pragma once

#include <cstddef>
#include <functional>

namespace metriq {

/// Worker cap used by parallel_for; 0 means hardware concurrency.
void set_max_threads(unsigned n);
unsigned max_threads();

/// Runs body(i) for i in [0, n). Work is handed out in index order; the
/// first exception thrown by any worker is rethrown after all join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace metriq
