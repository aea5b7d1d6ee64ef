#include "c0dynamo/parallel.hpp"

#include <cstdlib>
#include <string>

namespace c0dynamo {

int max_threads() {
  if (const char* env = std::getenv("C0DYNAMO_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (...) {
      // fall through to the hardware default
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

}  // namespace c0dynamo
