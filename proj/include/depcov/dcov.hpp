#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "depcov/kernels.hpp"
#include "depcov/series.hpp"

namespace depcov {

/// f(x1,x2,x3,x4) = |x1-x2| - |x1-x3| - |x2-x4| + |x3-x4| (Euclidean norms).
double kernel_f(std::span<const double> x1, std::span<const double> x2,
                std::span<const double> x3, std::span<const double> x4);

/// h'(z1..z6) = f(x1,x2,x3,x4) * f(y1,y2,y5,y6).
double kernel_h_prime(const std::array<Observation, 6>& z);

/// Mean of h' over all 720 orderings of the arguments. Test-only: every full
/// index sum is invariant under symmetrisation, so estimators run h'.
double kernel_h_sym(const std::array<Observation, 6>& z);

/// Double-centred distance matrix A_ij = d(u_i,u_j) - a_i - a_j + D of one
/// coordinate series.
class CenteredDistanceMatrix {
 public:
  CenteredDistanceMatrix(std::span<const double> points, std::size_t dim);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  double row_sum(std::size_t i) const;
  /// D: the mean pairwise distance before centring.
  double mean_distance() const noexcept { return mean_distance_; }

 private:
  std::size_t n_;
  double mean_distance_;
  std::vector<double> values_;
};

struct DcovValue {
  double value = 0.0;
  std::size_t n = 0;
};

struct DcovOptions {
  /// Distance matrices are materialised; larger samples are refused.
  std::size_t max_n = 20000;
};

/// Brute-force V-statistic n^-6 sum h'(z_i1..z_i6). Costs n^6; n <= 12.
DcovValue dcov_v_oracle(const PairedSample& s);

/// n^-2 sum A_ij B_ij in O(n^2) time and memory.
DcovValue dcov_fast(const PairedSample& s, const DcovOptions& options = {});

/// Clamp a raw centred-product sum into a DcovValue. Negative values within
/// 1e-9 * D(X) * D(Y) become 0; anything below throws ConsistencyError.
DcovValue finish_dcov(double centered_sum, std::size_t n, double mean_dist_x,
                      double mean_dist_y);

/// A block of d consecutive observations.
struct Block {
  std::span<const double> x;
  std::span<const double> y;
  std::size_t x_dim = 1;
  std::size_t y_dim = 1;

  std::size_t size() const { return x.size() / x_dim; }
  Observation at(std::size_t i) const {
    return {x.subspan(i * x_dim, x_dim), y.subspan(i * y_dim, y_dim)};
  }
};

Block block_of(const BlockPartition& p, std::size_t k);

/// H(B1..B6) = d^-6 sum over coordinate tuples of h'. Costs d^6.
double block_kernel_H(const std::array<Block, 6>& blocks);

/// dcov on the retained N*d prefix (computed by dcov_fast).
DcovValue dcov_blocks(const BlockPartition& p, const DcovOptions& options = {});

/// Points of one coordinate series, row-major.
struct PointSet {
  std::span<const double> data;
  std::size_t dim = 1;

  std::size_t size() const { return dim == 0 ? 0 : data.size() / dim; }
  std::span<const double> at(std::size_t i) const { return data.subspan(i * dim, dim); }
};

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo estimate of the first Hoeffding projection E[h'(z, Z2..Z6)]
/// with Z_i drawn iid from the product of the empirical measures of
/// `x_pool` and `y_pool` (independent uniform picks). The projection
/// vanishes, so the estimate should sit within a few standard errors of 0.
MonteCarloEstimate hoeffding_h1_estimate(const Observation& z, const PointSet& x_pool,
                                         const PointSet& y_pool, std::size_t draws,
                                         std::uint64_t seed);

}  // namespace depcov
