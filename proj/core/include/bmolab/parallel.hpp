#pragma once

#include <cstddef>
#include <functional>

namespace bmolab {

// Worker cap: BMOLAB_THREADS if set to a positive integer, otherwise the
// number of hardware threads.
std::size_t worker_count();

// Runs body(i) for i in [0, count). Each index is visited exactly once; bodies
// must write only to their own slot, which keeps results independent of the
// schedule.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace bmolab
