#include "slitpot/parallel.hpp"

#include <cstdlib>
#include <string>

namespace slitpot {

unsigned default_workers() {
  if (const char* env = std::getenv("SLITPOT_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

}  // namespace slitpot
