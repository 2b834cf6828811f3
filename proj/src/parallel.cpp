#include "moloconv/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace moloconv {

unsigned worker_count(std::size_t jobs) {
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("MOLOCONV_THREADS")) {
    try {
      const long requested = std::stol(cap);
      if (requested >= 1) workers = static_cast<unsigned>(std::min(requested, 256L));
    } catch (const std::exception&) {
      // unparsable override: ignore it
    }
  }
  return static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(jobs, 1)));
}

}  // namespace moloconv
