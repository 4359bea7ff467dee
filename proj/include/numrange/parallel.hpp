#pragma once

#include <cstddef>
#include <functional>

namespace numrange {

// Process-wide default worker count (0 = hardware concurrency). The CLI's
// --jobs flag lands here.
void set_default_jobs(unsigned jobs);
unsigned default_jobs();

// Runs fn(i) for i in [0, count). Work is split into contiguous blocks,
// one per worker; results must be written to disjoint slots so the outcome
// is identical for any worker count. Exceptions propagate to the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  unsigned jobs = 0);

}  // namespace numrange
