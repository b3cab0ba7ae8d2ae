#pragma once

#include <cstdint>
#include <functional>

namespace ergolab {

// Fans orbit indices out to a worker pool. Workers share nothing mutable;
// each body writes only to its own orbit's slot, so thread count never
// affects results.
void parallel_orbits(std::size_t count, int threads,
                     const std::function<void(std::size_t)>& body);

int default_threads();   // ERGOLAB_THREADS env var, else hardware

} // namespace ergolab
