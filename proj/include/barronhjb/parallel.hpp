#pragma once

#include <cstddef>
#include <functional>

namespace barronhjb {

/// Worker count used by parallel_for. Defaults to BARRONHJB_THREADS if set,
/// else the hardware concurrency.
std::size_t thread_count();

/// 0 restores the default.
void set_thread_count(std::size_t n);

/// Calls body(begin, end) on disjoint contiguous chunks covering [0, n).
/// Nested calls from inside a worker run serially on that worker.
/// Chunk boundaries depend only on n and grain, never on the thread count,
/// so per-chunk reductions combined in chunk order are reproducible.
void parallel_for(std::size_t n, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace barronhjb
