#pragma once

#include <cstddef>
#include <functional>

namespace etass {

/// Worker count: hardware concurrency, capped by ETASS_THREADS when set.
unsigned worker_count();

/// Runs f(i) for i in [0, n). Iterations are claimed dynamically; exceptions
/// from workers are rethrown on the caller after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

} // namespace etass
