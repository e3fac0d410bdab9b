#pragma once

// Dense O(n^2) kernels behind the distance-covariance estimators.
//
// Every kernel exists twice: a plain serial reference and an OpenMP version.
// Both run the same per-row arithmetic and combine row partials in index
// order, so their results are bit-identical for any thread count. The serial
// versions are kept for tests and benchmarks.

#include <cstddef>
#include <span>
#include <vector>

namespace depcov::kernels {

/// Row-major n x n matrix of pairwise Euclidean distances.
struct DistanceMatrix {
  std::size_t n = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

double euclidean(std::span<const double> a, std::span<const double> b);

DistanceMatrix pairwise_distances_serial(std::span<const double> points, std::size_t dim);
DistanceMatrix pairwise_distances(std::span<const double> points, std::size_t dim);

/// sum_{i,j} A_ij B_ij, where A and B are the double-centred versions of `a`
/// and `b`, together with the grand means D(a), D(b) used in the centring.
struct CenteredProduct {
  double sum = 0.0;
  double mean_a = 0.0;
  double mean_b = 0.0;
};

CenteredProduct centered_product_serial(const DistanceMatrix& a, const DistanceMatrix& b);
CenteredProduct centered_product(const DistanceMatrix& a, const DistanceMatrix& b);

/// Same quantity for the resampled points u'_i = u_{index[i]}: entries are
/// looked up as a(index_a[i], index_a[j]) instead of being recomputed.
/// Bit-identical to building the distance matrix of the resampled points.
CenteredProduct centered_product_serial(const DistanceMatrix& a,
                                        std::span<const std::size_t> index_a,
                                        const DistanceMatrix& b,
                                        std::span<const std::size_t> index_b);
CenteredProduct centered_product(const DistanceMatrix& a, std::span<const std::size_t> index_a,
                                 const DistanceMatrix& b, std::span<const std::size_t> index_b);

/// Mean pairwise distance D = n^-2 sum_{ij} a_ij (rows summed first).
double mean_distance(const DistanceMatrix& a);

}  // namespace depcov::kernels
