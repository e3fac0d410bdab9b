#include "depcov/kernels.hpp"

#include <cmath>
#include <numeric>

#include "depcov/errors.hpp"

namespace depcov::kernels {

namespace {

struct DirectRows {
  const DistanceMatrix& m;
  const double* row(std::size_t i) const { return m.values.data() + i * m.n; }
  std::size_t col(std::size_t j) const { return j; }
};

struct IndexedRows {
  const DistanceMatrix& m;
  std::span<const std::size_t> index;
  const double* row(std::size_t i) const { return m.values.data() + index[i] * m.n; }
  std::size_t col(std::size_t j) const { return index[j]; }
};

void fill_distance_row(std::span<const double> points, std::size_t dim, std::size_t n,
                       std::size_t i, double* out) {
  const auto pi = points.subspan(i * dim, dim);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = i == j ? 0.0 : euclidean(pi, points.subspan(j * dim, dim));
  }
}

template <class Rows>
double row_mean(const Rows& rows, std::size_t n, std::size_t i) {
  const double* r = rows.row(i);
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += r[rows.col(j)];
  return s / static_cast<double>(n);
}

double ordered_mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

template <class RowsA, class RowsB>
double centered_row(const RowsA& a, const RowsB& b, std::size_t n, std::size_t i,
                    std::span<const double> ma, double ga, std::span<const double> mb,
                    double gb) {
  const double* ra = a.row(i);
  const double* rb = b.row(i);
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double aij = ra[a.col(j)] - ma[i] - ma[j] + ga;
    const double bij = rb[b.col(j)] - mb[i] - mb[j] + gb;
    s += aij * bij;
  }
  return s;
}

template <bool Parallel, class RowsA, class RowsB>
CenteredProduct centered_product_impl(const RowsA& a, const RowsB& b, std::size_t n) {
  std::vector<double> ma(n), mb(n), partial(n);
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (Parallel)
  for (std::ptrdiff_t i = 0; i < sn; ++i) {
    ma[i] = row_mean(a, n, static_cast<std::size_t>(i));
    mb[i] = row_mean(b, n, static_cast<std::size_t>(i));
  }
  const double ga = ordered_mean(ma);
  const double gb = ordered_mean(mb);
#pragma omp parallel for schedule(static) if (Parallel)
  for (std::ptrdiff_t i = 0; i < sn; ++i) {
    partial[i] = centered_row(a, b, n, static_cast<std::size_t>(i), ma, ga, mb, gb);
  }
  return {std::accumulate(partial.begin(), partial.end(), 0.0), ga, gb};
}

void require_same_size(std::size_t na, std::size_t nb) {
  if (na != nb) throw ConfigError("distance matrices must have equal size");
  if (na == 0) throw ConfigError("empty distance matrix");
}

}  // namespace

double euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    s += diff * diff;
  }
  return std::sqrt(s);
}

DistanceMatrix pairwise_distances_serial(std::span<const double> points, std::size_t dim) {
  const std::size_t n = points.size() / dim;
  DistanceMatrix m{n, std::vector<double>(n * n)};
  for (std::size_t i = 0; i < n; ++i) fill_distance_row(points, dim, n, i, &m.values[i * n]);
  return m;
}

DistanceMatrix pairwise_distances(std::span<const double> points, std::size_t dim) {
  const std::size_t n = points.size() / dim;
  DistanceMatrix m{n, std::vector<double>(n * n)};
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < sn; ++i) {
    const auto row = static_cast<std::size_t>(i);
    fill_distance_row(points, dim, n, row, &m.values[row * n]);
  }
  return m;
}

CenteredProduct centered_product_serial(const DistanceMatrix& a, const DistanceMatrix& b) {
  require_same_size(a.n, b.n);
  return centered_product_impl<false>(DirectRows{a}, DirectRows{b}, a.n);
}

CenteredProduct centered_product(const DistanceMatrix& a, const DistanceMatrix& b) {
  require_same_size(a.n, b.n);
  return centered_product_impl<true>(DirectRows{a}, DirectRows{b}, a.n);
}

CenteredProduct centered_product_serial(const DistanceMatrix& a,
                                        std::span<const std::size_t> index_a,
                                        const DistanceMatrix& b,
                                        std::span<const std::size_t> index_b) {
  require_same_size(index_a.size(), index_b.size());
  return centered_product_impl<false>(IndexedRows{a, index_a}, IndexedRows{b, index_b},
                                      index_a.size());
}

CenteredProduct centered_product(const DistanceMatrix& a, std::span<const std::size_t> index_a,
                                 const DistanceMatrix& b, std::span<const std::size_t> index_b) {
  require_same_size(index_a.size(), index_b.size());
  return centered_product_impl<true>(IndexedRows{a, index_a}, IndexedRows{b, index_b},
                                     index_a.size());
}

double mean_distance(const DistanceMatrix& a) {
  std::vector<double> means(a.n);
  for (std::size_t i = 0; i < a.n; ++i) means[i] = row_mean(DirectRows{a}, a.n, i);
  return ordered_mean(means);
}

}  // namespace depcov::kernels
