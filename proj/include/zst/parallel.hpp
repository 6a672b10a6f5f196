#pragma once

#include <cstddef>
#include <functional>

namespace zst {

// worker count: hardware concurrency capped by ZS_TSPEC_THREADS
unsigned thread_budget();

// runs fn(k) for k in [0, n); blocks until done
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace zst
