#include "optoweak/parallel.hpp"

#include <cstdlib>
#include <string>

namespace optoweak {

unsigned worker_count() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("OPTOWEAK_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // unparsable values fall back to the hardware count
    }
  }
  return hw;
}

}  // namespace optoweak
