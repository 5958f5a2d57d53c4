#pragma once

#include <cstddef>
#include <functional>

namespace momentlab {

/// Worker cap from MOMENTLAB_THREADS (default 1, minimum 1).
int thread_limit();

/// Runs body(i) for i in [0, count), spread over at most `threads` workers.
/// Each index is visited exactly once; callers write to disjoint slots.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  int threads = thread_limit());

} // namespace momentlab
