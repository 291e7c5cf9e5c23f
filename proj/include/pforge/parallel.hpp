#pragma once

#include <cstddef>
#include <functional>

namespace pforge {

// Worker count for parallel sections: PACKING_FORGE_THREADS if set and
// positive, otherwise std::thread::hardware_concurrency().
unsigned default_thread_count();

// Runs fn(begin, end) over [0, count) split into chunks of at most
// chunk_size items.  Chunk boundaries depend only on count and chunk_size,
// never on the worker count, so per-chunk outputs land in identical slots
// regardless of parallelism.  Exceptions from workers are rethrown (first
// one in chunk order wins).
void parallel_chunks(std::size_t count, std::size_t chunk_size, unsigned threads,
                     const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace pforge
