#pragma once

#include <cstddef>
#include <functional>

namespace sbmwalk {

/// Number of worker threads used by library routines. Defaults to 1.
void set_thread_count(int threads);
int thread_count();

/// Runs body(i) for i in [0, count). Items are split into contiguous chunks,
/// one per worker. Calls made from inside a worker run serially, so nested
/// parallel regions never oversubscribe. Callers must write only to
/// per-item outputs; results are then independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace sbmwalk
