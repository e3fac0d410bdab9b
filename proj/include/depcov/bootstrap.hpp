#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "depcov/dcov.hpp"
#include "depcov/seeding.hpp"
#include "depcov/series.hpp"

namespace depcov {

struct BootstrapConfig {
  /// Block length exponent: d = max(1, floor(ln(n)^gamma)), 0 < gamma < 1/2.
  double gamma = 0.45;
  /// Explicit block length; overrides gamma.
  std::optional<std::size_t> block_len;
  std::size_t replicates = 200;
  double alpha = 0.05;
  std::uint64_t base_seed = 0;
  /// Group J consecutive observations before testing (J = 1: no grouping).
  std::size_t vectorize_stride = 1;

  /// Throws ConfigError naming the violated constraint.
  void validate() const;
};

struct BootstrapOutcome {
  /// n * dcov on the retained prefix, n = N * d.
  double statistic = 0.0;
  std::vector<double> replicate_stats;
  double quantile = 0.0;
  double p_value = 1.0;
  bool reject = false;
  std::size_t block_len = 0;
  std::size_t block_count = 0;
  /// Observations entering the statistic (after vectorisation and tail drop).
  std::size_t n_used = 0;
  std::size_t discarded_tail = 0;

  friend bool operator==(const BootstrapOutcome&, const BootstrapOutcome&) = default;
};

/// max(1, floor(ln(n)^gamma)). Requires n >= 2 and 0 < gamma < 1/2.
std::size_t block_length(std::size_t n, double gamma);

/// Block indices of one bootstrap replicate: N draws for X, then N for Y,
/// uniform on {0..N-1}, from the same generator.
struct BlockDraw {
  std::vector<std::size_t> x_blocks;
  std::vector<std::size_t> y_blocks;
};

BlockDraw draw_blocks(std::size_t block_count, Rng& rng);

/// Row (m*d + i) of the result is (X-block x_blocks[m] at i, Y-block y_blocks[m] at i).
PairedSample assemble_resample(const BlockPartition& p, const BlockDraw& draw);

/// draw_blocks + assemble_resample.
PairedSample resample_blocks(const BlockPartition& p, Rng& rng);

/// Replicate statistics n * dcov(resample) for b = 0..B-1, where replicate b
/// draws from substream(base_seed, b). Applies vectorisation and the block
/// length from `cfg`. Throws DataError when fewer than two blocks remain.
/// Replicates run in parallel; the output does not depend on the worker count.
std::vector<double> bootstrap_distribution(const PairedSample& s, const BootstrapConfig& cfg);

/// Single-threaded reference for bootstrap_distribution; recomputes each
/// resample's distance matrices from scratch instead of reusing lookups.
std::vector<double> bootstrap_distribution_serial(const PairedSample& s,
                                                  const BootstrapConfig& cfg);

/// Order statistic at 1-based index ceil(B * (1 - alpha)) of the sorted stats.
double upper_quantile(std::span<const double> stats, double alpha);

/// (1 + #{b : stats[b] >= statistic}) / (B + 1).
double bootstrap_p_value(std::span<const double> stats, double statistic);

/// Rejects independence when n * dcov exceeds the upper alpha-quantile of the
/// bootstrap statistics (ties accept).
BootstrapOutcome independence_test(const PairedSample& s, const BootstrapConfig& cfg);

}  // namespace depcov
