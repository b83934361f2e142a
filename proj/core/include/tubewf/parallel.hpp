#pragma once

#include <cstddef>
#include <functional>

namespace tubewf {

/// Global cap on worker threads (0 = hardware concurrency). Set once by the
/// CLI; reads are lock-free.
int max_threads();
void set_max_threads(int n);

/// Static block partition over [0, count). Each index is visited exactly once;
/// results must be written to disjoint slots so output does not depend on the
/// thread count. Rethrows the first exception raised by any worker.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace tubewf
