#pragma once

#include <cstddef>
#include <functional>

namespace commbound {

/// Worker count: hardware concurrency, capped by COMMBOUND_THREADS when set.
unsigned worker_count();

/// Calls body(i) for i in [0, count) across worker_count() threads, in
/// contiguous shards. body must only write state owned by index i.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace commbound
