#pragma once

#include <cstddef>
#include <functional>

namespace warpbank {

/// Worker count: WARPBANK_THREADS if set to a positive integer, otherwise the
/// hardware concurrency.
std::size_t worker_count();

/// Splits [0, n) into contiguous chunks, one per worker, and runs
/// body(worker, begin, end) for each. Returns after all chunks finish.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace warpbank
