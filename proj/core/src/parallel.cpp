#include "riskcal/parallel.hpp"

#include <cstdlib>
#include <string>

namespace riskcal {

std::size_t worker_count() noexcept {
  if (const char* env = std::getenv("RISKCAL_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(std::min(v, 256L));
    } catch (...) {
      // fall through to the hardware default on unparsable values
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<std::size_t>(hw) : 1;
}

}  // namespace riskcal
