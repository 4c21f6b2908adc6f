#include "pdregion/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace pdregion {

unsigned worker_count() {
  if (const char* env = std::getenv("PDREGION_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace pdregion
