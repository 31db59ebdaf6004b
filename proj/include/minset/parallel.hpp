#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace minset {

/// Worker count: MINSET_THREADS when set to a positive integer, otherwise the
/// hardware concurrency. Read on every call.
unsigned worker_count();

/// Runs body(chunk) for chunk in [0, chunk_count) on up to worker_count()
/// threads. Chunks are claimed dynamically; callers store per-chunk results
/// and reduce them in chunk order so the outcome does not depend on the
/// thread count.
void for_each_chunk(std::size_t chunk_count, const std::function<void(std::size_t)>& body);

/// Seed for chunk `chunk` of a run seeded with `seed` (splitmix64 finalizer
/// over the pair).
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk);

}  // namespace minset
