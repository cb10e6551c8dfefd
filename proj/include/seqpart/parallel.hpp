#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace seqpart {

/// Number of worker threads used by the heavy kernels. Defaults to the
/// hardware concurrency; the CLI overrides it from --workers.
int worker_count();
void set_worker_count(int workers);

/// Runs fn(chunk_begin, chunk_end, chunk_index) over [0, n) in fixed-size
/// chunks. Chunk boundaries depend only on n and chunk_size, never on the
/// worker count, so writers that target per-chunk slots stay deterministic.
void parallel_chunks(std::size_t n, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

/// Deterministic 64-bit mix for deriving independent RNG streams.
std::uint64_t splitmix64(std::uint64_t x);

/// Combine seed material (hashes of box bounds, chunk indices, ...) into a
/// stream seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt);

}  // namespace seqpart
