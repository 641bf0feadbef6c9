#pragma once

#include <cstddef>
#include <functional>

namespace twoslope {

/// Upper bound on worker threads used by parallel_for. Defaults to 1.
void set_max_threads(int n);
int max_threads() noexcept;

/// Calls fn(i) for i in [0, n) on up to max_threads() workers. Callers write
/// results into slot i and reduce afterwards in index order, so the outcome
/// does not depend on the worker count. The first exception thrown by any
/// task is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace twoslope
