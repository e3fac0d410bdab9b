#pragma once

#include <optional>
#include <string>

namespace depcov {

/// Number of OpenMP worker threads used by the library. Never changes results.
void set_threads(int threads);
int threads();

/// --threads flag, else DEPCOV_THREADS, else hardware concurrency.
int resolve_threads(std::optional<int> flag);

/// RAII override of the worker count.
class ThreadScope {
 public:
  explicit ThreadScope(int threads);
  ~ThreadScope();
  ThreadScope(const ThreadScope&) = delete;
  ThreadScope& operator=(const ThreadScope&) = delete;

 private:
  int previous_;
};

}  // namespace depcov
