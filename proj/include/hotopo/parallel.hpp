#ifndef HOTOPO_PARALLEL_HPP
#define HOTOPO_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace hotopo {

// Worker count: min(HOTOPO_THREADS, hardware concurrency), at least 1.
int worker_count();

// Run body(i) for i in [0, n) across workers.  Work is index-addressed, so
// results must not depend on the schedule; exceptions are rethrown on the
// calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hotopo

#endif
