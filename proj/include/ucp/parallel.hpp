#pragma once

#include <cstddef>
#include <functional>

namespace ucp {

/// Worker count used when a call passes jobs <= 0. Starts at 1.
int default_jobs();
void set_default_jobs(int jobs);

/// Runs body(i) for i in [0, n) on up to `jobs` threads. Each index must write
/// only its own outputs. If bodies throw, the exception of the smallest index
/// is rethrown after all workers finish.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body);

}  // namespace ucp
