#pragma once

#include <cstddef>
#include <functional>

namespace psdo {

/// Worker count: PSDO_THREADS if set (at most 256), hardware concurrency otherwise.
unsigned thread_count() noexcept;

/// Runs body(begin, end) over contiguous chunks of [0, count). Every index is
/// processed by exactly one call, and each output entry is computed by the
/// same sequential code whatever the partition, so results do not depend on
/// the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk = 1);

}  // namespace psdo
