#include "psdo/parallel.hpp"

#include "psdo/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace psdo {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_params: return "InvalidParams";
    case Errc::mode_mismatch: return "ModeMismatch";
    case Errc::domain_mismatch: return "DomainMismatch";
    case Errc::zero_window: return "ZeroWindow";
    case Errc::size_limit: return "SizeLimit";
    case Errc::arity_mismatch: return "ArityMismatch";
    case Errc::too_few_entries: return "TooFewEntries";
    case Errc::invalid_exponent: return "InvalidExponent";
    case Errc::dim_mismatch: return "DimMismatch";
    case Errc::unsupported_dimension: return "UnsupportedDimension";
    case Errc::invalid_dimension: return "InvalidDimension";
    case Errc::io_error: return "IoError";
  }
  return "Error";
}

unsigned thread_count() noexcept {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PSDO_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) return static_cast<unsigned>(std::min(cap, 256L));
  }
  return hw;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk) {
  if (count == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(thread_count(), std::max<std::size_t>(1, count / std::max<std::size_t>(1, min_chunk)));
  if (workers <= 1) {
    body(0, count);
    return;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
}

}  // namespace psdo
