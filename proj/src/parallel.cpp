#include "depcov/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <thread>

#include "depcov/errors.hpp"

namespace depcov {

void set_threads(int threads) {
  if (threads < 1) throw ConfigError("requires threads >= 1");
  omp_set_num_threads(threads);
}

int threads() { return omp_get_max_threads(); }

int resolve_threads(std::optional<int> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("DEPCOV_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw ConfigError("DEPCOV_THREADS must be a positive integer");
    return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

ThreadScope::ThreadScope(int threads) : previous_(depcov::threads()) { set_threads(threads); }

ThreadScope::~ThreadScope() { omp_set_num_threads(previous_); }

}  // namespace depcov
