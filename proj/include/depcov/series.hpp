#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace depcov {

/// One paired observation z_k = (x_k, y_k), viewed in place.
struct Observation {
  std::span<const double> x;
  std::span<const double> y;
};

/// The observed sequence ((x_k, y_k))_{k<=n}, x in R^{x_dim}, y in R^{y_dim}.
///
/// Rows are stored row-major in two flat arrays, so a run of consecutive
/// rows is a contiguous span. Immutable after construction; every
/// coordinate is checked finite.
class PairedSample {
 public:
  PairedSample(std::size_t x_dim, std::size_t y_dim, std::vector<double> x,
               std::vector<double> y);

  /// Univariate convenience: x_dim = y_dim = 1.
  static PairedSample univariate(std::vector<double> x, std::vector<double> y);

  std::size_t size() const noexcept { return n_; }
  std::size_t x_dim() const noexcept { return x_dim_; }
  std::size_t y_dim() const noexcept { return y_dim_; }

  std::span<const double> x(std::size_t k) const {
    return {x_.data() + k * x_dim_, x_dim_};
  }
  std::span<const double> y(std::size_t k) const {
    return {y_.data() + k * y_dim_, y_dim_};
  }
  Observation row(std::size_t k) const { return {x(k), y(k)}; }

  std::span<const double> x_data() const noexcept { return x_; }
  std::span<const double> y_data() const noexcept { return y_; }

  /// First `count` rows as a new sample.
  PairedSample prefix(std::size_t count) const;

  friend bool operator==(const PairedSample&, const PairedSample&) = default;

 private:
  std::size_t x_dim_;
  std::size_t y_dim_;
  std::size_t n_;
  std::vector<double> x_;
  std::vector<double> y_;
};

/// N = floor(n/d) non-overlapping length-d blocks of the X and Y series.
/// The trailing n - N*d observations are dropped and recorded.
class BlockPartition {
 public:
  BlockPartition(const PairedSample& s, std::size_t block_len);

  std::size_t block_len() const noexcept { return d_; }
  std::size_t block_count() const noexcept { return count_; }
  std::size_t discarded_tail() const noexcept { return tail_; }

  /// Block k (0-based) of X: d points of dimension x_dim, row-major.
  std::span<const double> x_block(std::size_t k) const;
  std::span<const double> y_block(std::size_t k) const;

  /// The N*d retained observations.
  const PairedSample& retained() const noexcept { return retained_; }

 private:
  std::size_t d_;
  std::size_t count_;
  std::size_t tail_;
  PairedSample retained_;
};

/// Rows grouped J at a time: row k of `inner` is (z_{(k-1)J+1}, ..., z_{kJ})
/// split into its X and Y parts.
struct VectorizedSample {
  std::size_t stride;
  PairedSample inner;
};

/// Reads a comma-separated file with x_dim + y_dim numeric columns, X first.
/// An optional header `x1,...,x{x_dim},y1,...,y{y_dim}` is skipped. Blank
/// lines are ignored. Throws DataError naming the offending row.
PairedSample load_csv(const std::filesystem::path& path, std::size_t x_dim,
                      std::size_t y_dim);

/// Throws ConfigError when d == 0 or d > n.
BlockPartition partition_blocks(const PairedSample& s, std::size_t d);

/// Throws ConfigError when stride == 0 or stride > n.
VectorizedSample vectorize(const PairedSample& s, std::size_t stride);

}  // namespace depcov
