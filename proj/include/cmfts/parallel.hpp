#pragma once

#include <cstddef>
#include <functional>

namespace cmfts {

/// Worker count to use: `requested` if nonzero, else the CMFTS_JOBS
/// environment variable, else the hardware concurrency.
unsigned effective_jobs(unsigned requested = 0);

/// Runs body(0..count-1) on up to `jobs` threads. Results must be written
/// to per-index slots; scheduling order is unspecified. The first exception
/// thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body);

}  // namespace cmfts
