#pragma once

#include <cstddef>
#include <functional>

namespace loctile {

/// Caps the number of worker threads used by parallel_for. 0 means one per core.
void set_thread_limit(std::size_t n);
std::size_t thread_limit();

/// Calls body(begin, end) on disjoint contiguous chunks covering [0, n).
/// Chunk boundaries depend only on n and the thread limit.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace loctile
