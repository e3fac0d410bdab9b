#include "depcov/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "depcov/errors.hpp"
#include "depcov/kernels.hpp"

namespace depcov {

namespace {

struct Prepared {
  PairedSample sample;
  std::size_t block_len;
};

// Vectorise (if requested), pick d, and check that at least two blocks remain.
Prepared prepare(const PairedSample& s, const BootstrapConfig& cfg) {
  cfg.validate();
  PairedSample base = cfg.vectorize_stride > 1 ? vectorize(s, cfg.vectorize_stride).inner : s;
  std::size_t d = 1;
  if (cfg.block_len) {
    d = *cfg.block_len;
  } else {
    if (base.size() < 2) throw DataError("bootstrap degenerate: single block");
    d = block_length(base.size(), cfg.gamma);
  }
  if (d > base.size() || base.size() / d < 2) {
    throw DataError("bootstrap degenerate: single block (n=" + std::to_string(base.size()) +
                    ", d=" + std::to_string(d) + ")");
  }
  return {std::move(base), d};
}

std::vector<std::size_t> expand_rows(const std::vector<std::size_t>& blocks, std::size_t d) {
  std::vector<std::size_t> rows;
  rows.reserve(blocks.size() * d);
  for (std::size_t k : blocks) {
    for (std::size_t i = 0; i < d; ++i) rows.push_back(k * d + i);
  }
  return rows;
}

}  // namespace

void BootstrapConfig::validate() const {
  if (!block_len && !(gamma > 0.0 && gamma < 0.5)) {
    throw ConfigError("requires 0 < gamma < 1/2");
  }
  if (block_len && *block_len == 0) throw ConfigError("requires block length d >= 1");
  if (replicates < 1) throw ConfigError("requires replicates B >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("requires 0 < alpha < 1");
  if (vectorize_stride < 1) throw ConfigError("requires vectorize stride J >= 1");
}

std::size_t block_length(std::size_t n, double gamma) {
  if (!(gamma > 0.0 && gamma < 0.5)) throw ConfigError("requires 0 < gamma < 1/2");
  if (n < 2) throw ConfigError("requires n >= 2");
  const double d = std::floor(std::pow(std::log(static_cast<double>(n)), gamma));
  return std::max<std::size_t>(1, static_cast<std::size_t>(d));
}

BlockDraw draw_blocks(std::size_t block_count, Rng& rng) {
  if (block_count == 0) throw ConfigError("requires at least one block");
  std::uniform_int_distribution<std::size_t> pick(0, block_count - 1);
  BlockDraw draw;
  draw.x_blocks.resize(block_count);
  draw.y_blocks.resize(block_count);
  for (auto& k : draw.x_blocks) k = pick(rng);
  for (auto& l : draw.y_blocks) l = pick(rng);
  return draw;
}

PairedSample assemble_resample(const BlockPartition& p, const BlockDraw& draw) {
  std::vector<double> x;
  std::vector<double> y;
  x.reserve(p.retained().x_data().size());
  y.reserve(p.retained().y_data().size());
  for (std::size_t m = 0; m < draw.x_blocks.size(); ++m) {
    const auto bx = p.x_block(draw.x_blocks[m]);
    const auto by = p.y_block(draw.y_blocks[m]);
    x.insert(x.end(), bx.begin(), bx.end());
    y.insert(y.end(), by.begin(), by.end());
  }
  return PairedSample(p.retained().x_dim(), p.retained().y_dim(), std::move(x), std::move(y));
}

PairedSample resample_blocks(const BlockPartition& p, Rng& rng) {
  return assemble_resample(p, draw_blocks(p.block_count(), rng));
}

std::vector<double> bootstrap_distribution(const PairedSample& s, const BootstrapConfig& cfg) {
  const auto prepared = prepare(s, cfg);
  const BlockPartition p(prepared.sample, prepared.block_len);
  const auto& kept = p.retained();
  const auto dx = kernels::pairwise_distances(kept.x_data(), kept.x_dim());
  const auto dy = kernels::pairwise_distances(kept.y_data(), kept.y_dim());
  const std::size_t n = kept.size();

  std::vector<double> stats(cfg.replicates);
  const auto replicates = static_cast<std::ptrdiff_t>(cfg.replicates);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t b = 0; b < replicates; ++b) {
    auto rng = substream(cfg.base_seed, static_cast<std::uint64_t>(b));
    const auto draw = draw_blocks(p.block_count(), rng);
    const auto rows_x = expand_rows(draw.x_blocks, p.block_len());
    const auto rows_y = expand_rows(draw.y_blocks, p.block_len());
    const auto c = kernels::centered_product_serial(dx, rows_x, dy, rows_y);
    stats[b] = static_cast<double>(n) * finish_dcov(c.sum, n, c.mean_a, c.mean_b).value;
  }
  return stats;
}

std::vector<double> bootstrap_distribution_serial(const PairedSample& s,
                                                  const BootstrapConfig& cfg) {
  const auto prepared = prepare(s, cfg);
  const BlockPartition p(prepared.sample, prepared.block_len);
  const auto n = static_cast<double>(p.retained().size());
  std::vector<double> stats;
  stats.reserve(cfg.replicates);
  for (std::size_t b = 0; b < cfg.replicates; ++b) {
    auto rng = substream(cfg.base_seed, b);
    const auto resample = resample_blocks(p, rng);
    const auto dx = kernels::pairwise_distances_serial(resample.x_data(), resample.x_dim());
    const auto dy = kernels::pairwise_distances_serial(resample.y_data(), resample.y_dim());
    const auto c = kernels::centered_product_serial(dx, dy);
    stats.push_back(n * finish_dcov(c.sum, resample.size(), c.mean_a, c.mean_b).value);
  }
  return stats;
}

double upper_quantile(std::span<const double> stats, double alpha) {
  if (stats.empty()) throw ConfigError("upper_quantile of an empty sequence");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("requires 0 < alpha < 1");
  std::vector<double> sorted(stats.begin(), stats.end());
  std::sort(sorted.begin(), sorted.end());
  const double b = static_cast<double>(sorted.size());
  // Guard ceil against representation error, e.g. 100 * 0.95 = 95.00000000000001.
  const double position = b * (1.0 - alpha);
  auto rank = static_cast<std::size_t>(std::ceil(position - 1e-9 * b));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

double bootstrap_p_value(std::span<const double> stats, double statistic) {
  const auto at_least = std::count_if(stats.begin(), stats.end(),
                                      [statistic](double v) { return v >= statistic; });
  return (1.0 + static_cast<double>(at_least)) / (static_cast<double>(stats.size()) + 1.0);
}

BootstrapOutcome independence_test(const PairedSample& s, const BootstrapConfig& cfg) {
  const auto prepared = prepare(s, cfg);
  const BlockPartition p(prepared.sample, prepared.block_len);
  BootstrapOutcome out;
  out.block_len = p.block_len();
  out.block_count = p.block_count();
  out.n_used = p.retained().size();
  out.discarded_tail = p.discarded_tail();
  out.statistic = static_cast<double>(out.n_used) * dcov_fast(p.retained()).value;
  // prepared.sample is already vectorised.
  BootstrapConfig inner = cfg;
  inner.vectorize_stride = 1;
  inner.block_len = prepared.block_len;
  out.replicate_stats = bootstrap_distribution(prepared.sample, inner);
  out.quantile = upper_quantile(out.replicate_stats, cfg.alpha);
  out.p_value = bootstrap_p_value(out.replicate_stats, out.statistic);
  out.reject = out.statistic > out.quantile;
  return out;
}

}  // namespace depcov
