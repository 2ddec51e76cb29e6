#pragma once

#include <cstddef>
#include <functional>

namespace bordered {

// Worker count used by the parallel checks. 0 means hardware concurrency.
void set_thread_count(std::size_t n);
std::size_t thread_count();

/// Runs body(begin, end) over a static partition of [0, n). Chunk boundaries
/// depend only on n and the thread count; callers must merge per-chunk results
/// in chunk order so output is schedule-independent.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t chunk, std::size_t begin, std::size_t end)>& body,
                     std::size_t chunks);

std::size_t default_chunk_count(std::size_t n);

}  // namespace bordered
