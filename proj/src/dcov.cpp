#include "depcov/dcov.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "depcov/errors.hpp"
#include "depcov/seeding.hpp"

namespace depcov {

namespace {

void require_same_dims(const std::array<Observation, 6>& z, std::size_t xi_max,
                       std::span<const std::size_t> y_used) {
  const std::size_t xd = z[0].x.size();
  const std::size_t yd = z[0].y.size();
  for (std::size_t i = 0; i < xi_max; ++i) {
    if (z[i].x.size() != xd) throw ConfigError("kernel arguments differ in x dimension");
  }
  for (std::size_t i : y_used) {
    if (z[i].y.size() != yd) throw ConfigError("kernel arguments differ in y dimension");
  }
}

double h_prime_unchecked(const std::array<Observation, 6>& z) {
  const double fx = kernel_f(z[0].x, z[1].x, z[2].x, z[3].x);
  if (fx == 0.0) return 0.0;
  return fx * kernel_f(z[0].y, z[1].y, z[4].y, z[5].y);
}

}  // namespace

double kernel_f(std::span<const double> x1, std::span<const double> x2,
                std::span<const double> x3, std::span<const double> x4) {
  const std::size_t dim = x1.size();
  if (x2.size() != dim || x3.size() != dim || x4.size() != dim) {
    throw ConfigError("kernel_f arguments differ in dimension");
  }
  using kernels::euclidean;
  return euclidean(x1, x2) - euclidean(x1, x3) - euclidean(x2, x4) + euclidean(x3, x4);
}

double kernel_h_prime(const std::array<Observation, 6>& z) {
  static constexpr std::array<std::size_t, 4> y_used{0, 1, 4, 5};
  require_same_dims(z, 4, y_used);
  return h_prime_unchecked(z);
}

double kernel_h_sym(const std::array<Observation, 6>& z) {
  static constexpr std::array<std::size_t, 6> all{0, 1, 2, 3, 4, 5};
  require_same_dims(z, 6, all);
  std::array<std::size_t, 6> perm = all;
  double sum = 0.0;
  do {
    std::array<Observation, 6> permuted;
    for (std::size_t i = 0; i < 6; ++i) permuted[i] = z[perm[i]];
    sum += h_prime_unchecked(permuted);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum / 720.0;
}

CenteredDistanceMatrix::CenteredDistanceMatrix(std::span<const double> points,
                                               std::size_t dim)
    : n_(dim == 0 ? 0 : points.size() / dim), mean_distance_(0.0) {
  if (n_ == 0) throw ConfigError("centered distance matrix needs at least one point");
  auto d = kernels::pairwise_distances(points, dim);
  std::vector<double> row_mean(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += d(i, j);
    row_mean[i] = s / static_cast<double>(n_);
  }
  double g = 0.0;
  for (double m : row_mean) g += m;
  mean_distance_ = g / static_cast<double>(n_);
  values_ = std::move(d.values);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      values_[i * n_ + j] += mean_distance_ - row_mean[i] - row_mean[j];
    }
  }
}

double CenteredDistanceMatrix::row_sum(std::size_t i) const {
  double s = 0.0;
  for (std::size_t j = 0; j < n_; ++j) s += values_[i * n_ + j];
  return s;
}

DcovValue finish_dcov(double centered_sum, std::size_t n, double mean_dist_x,
                      double mean_dist_y) {
  const double nn = static_cast<double>(n);
  const double value = centered_sum / (nn * nn);
  if (!std::isfinite(value)) throw ConsistencyError("non-finite distance covariance");
  if (value >= 0.0) return {value, n};
  const double scale = mean_dist_x * mean_dist_y;
  if (value >= -1e-9 * scale) return {0.0, n};
  throw ConsistencyError("distance covariance " + std::to_string(value) +
                         " is negative beyond rounding tolerance");
}

DcovValue dcov_v_oracle(const PairedSample& s) {
  const std::size_t n = s.size();
  if (n > 12) throw ConfigError("dcov_v_oracle requires n <= 12 (cost n^6)");
  double sum = 0.0;
  std::array<std::size_t, 6> idx{};
  std::array<Observation, 6> z;
  // Odometer over all n^6 index tuples.
  while (true) {
    for (std::size_t k = 0; k < 6; ++k) z[k] = s.row(idx[k]);
    sum += h_prime_unchecked(z);
    std::size_t k = 0;
    while (k < 6 && ++idx[k] == n) idx[k++] = 0;
    if (k == 6) break;
  }
  const double n6 = std::pow(static_cast<double>(n), 6);
  return {sum / n6, n};
}

DcovValue dcov_fast(const PairedSample& s, const DcovOptions& options) {
  if (s.size() > options.max_n) {
    throw ConfigError("sample size " + std::to_string(s.size()) + " exceeds max_n " +
                      std::to_string(options.max_n));
  }
  const auto a = kernels::pairwise_distances(s.x_data(), s.x_dim());
  const auto b = kernels::pairwise_distances(s.y_data(), s.y_dim());
  const auto c = kernels::centered_product(a, b);
  return finish_dcov(c.sum, s.size(), c.mean_a, c.mean_b);
}

Block block_of(const BlockPartition& p, std::size_t k) {
  return {p.x_block(k), p.y_block(k), p.retained().x_dim(), p.retained().y_dim()};
}

double block_kernel_H(const std::array<Block, 6>& blocks) {
  const std::size_t d = blocks[0].size();
  for (const auto& b : blocks) {
    if (b.size() != d || b.y.size() / b.y_dim != d) {
      throw ConfigError("block_kernel_H requires equal block lengths");
    }
  }
  if (d == 0) throw ConfigError("block_kernel_H requires non-empty blocks");
  double sum = 0.0;
  std::array<std::size_t, 6> idx{};
  std::array<Observation, 6> z;
  while (true) {
    for (std::size_t k = 0; k < 6; ++k) z[k] = blocks[k].at(idx[k]);
    sum += kernel_h_prime(z);
    std::size_t k = 0;
    while (k < 6 && ++idx[k] == d) idx[k++] = 0;
    if (k == 6) break;
  }
  return sum / std::pow(static_cast<double>(d), 6);
}

DcovValue dcov_blocks(const BlockPartition& p, const DcovOptions& options) {
  return dcov_fast(p.retained(), options);
}

MonteCarloEstimate hoeffding_h1_estimate(const Observation& z, const PointSet& x_pool,
                                         const PointSet& y_pool, std::size_t draws,
                                         std::uint64_t seed) {
  if (x_pool.size() == 0 || y_pool.size() == 0) throw ConfigError("empty pool");
  if (draws < 100) throw ConfigError("requires at least 100 Monte Carlo draws");
  if (x_pool.dim != z.x.size() || y_pool.dim != z.y.size()) {
    throw ConfigError("pool dimension does not match the observation");
  }
  auto rng = make_rng(seed);
  std::uniform_int_distribution<std::size_t> pick_x(0, x_pool.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_y(0, y_pool.size() - 1);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t t = 0; t < draws; ++t) {
    std::array<Observation, 6> w;
    w[0] = z;
    for (std::size_t k = 1; k < 6; ++k) {
      const std::size_t i = pick_x(rng);
      const std::size_t j = pick_y(rng);
      w[k] = {x_pool.at(i), y_pool.at(j)};
    }
    const double v = h_prime_unchecked(w);
    // Welford update.
    const double delta = v - mean;
    mean += delta / static_cast<double>(t + 1);
    m2 += delta * (v - mean);
  }
  const double m = static_cast<double>(draws);
  const double variance = m2 / (m - 1.0);
  return {mean, std::sqrt(variance / m)};
}

}  // namespace depcov
