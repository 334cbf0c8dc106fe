#pragma once

#include <cstddef>
#include <functional>

namespace tvs {

// Worker cap: TVS_THREADS if set to a positive integer, else the machine's
// hardware concurrency (at least 1).
unsigned default_thread_count();

// Runs body(i) for i in [0, count) across up to `threads` workers and joins
// before returning. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace tvs
