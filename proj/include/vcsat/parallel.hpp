#pragma once

#include <cstdint>
#include <functional>

namespace vcsat {

// Number of worker threads bulk scans may use: the VCSAT_WORKERS environment
// variable when set to a positive integer, otherwise the hardware thread
// count (at least 1).
int worker_count();

// Number of contiguous chunks parallel_chunks will split [0, count) into —
// min(worker_count(), count).  Callers size their per-chunk result slots
// with this before running the scan.
int chunk_count(std::uint64_t count);

// Run body(begin, end, chunk) over disjoint contiguous chunks covering
// [0, count), one thread per chunk.  Chunk boundaries depend only on count
// and the worker count, never on scheduling, so merging per-chunk results in
// chunk order reproduces the sequential outcome exactly.  The first chunk's
// exception (by chunk index) is rethrown after all threads join.
void parallel_chunks(std::uint64_t count,
                     const std::function<void(std::uint64_t, std::uint64_t, int)>& body);

} // namespace vcsat
