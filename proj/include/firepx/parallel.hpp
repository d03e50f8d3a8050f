#pragma once

#include <cstddef>
#include <functional>

namespace firepx {

/// Worker cap: FIREPX_THREADS when set to a positive integer, otherwise the
/// hardware concurrency. A set-but-unusable value falls back to 1.
unsigned thread_cap() noexcept;

/// Runs fn(i) for every i in [0, n) across up to thread_cap() workers.
/// Callers own determinism by writing only to per-index slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace firepx
