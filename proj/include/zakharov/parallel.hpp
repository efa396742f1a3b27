#pragma once

#include <cstddef>
#include <functional>

namespace zakharov {

/// Worker count: ZAKHAROV_THREADS if set and positive, else hardware concurrency.
int worker_count();

/// Calls body(i) for i in [0, count) on up to worker_count() threads.
/// Each index runs exactly once; the first exception is rethrown after all
/// workers have stopped.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace zakharov
