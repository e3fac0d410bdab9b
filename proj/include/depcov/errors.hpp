#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace depcov {

/// Invalid parameters or violated preconditions. The message names the
/// violated constraint.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Problems with the data itself (malformed input, too few observations).
/// `row()` is the 1-based file row when the error came from a file, else 0.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what, std::size_t row = 0)
      : std::runtime_error(row == 0 ? what : "row " + std::to_string(row) + ": " + what),
        row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// A provably impossible numerical state (e.g. a clearly negative dcov).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace depcov
