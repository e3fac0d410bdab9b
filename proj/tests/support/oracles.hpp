#pragma once

// Reference implementations used only by the tests. Each is written from the
// definitions, independently of the library code paths it checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "depcov/seeding.hpp"
#include "depcov/series.hpp"

namespace oracle {

inline depcov::PairedSample random_sample(depcov::Rng& rng, std::size_t n, std::size_t lx,
                                          std::size_t ly) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(n * lx);
  std::vector<double> y(n * ly);
  for (double& v : x) v = g(rng);
  for (double& v : y) v = g(rng);
  return {lx, ly, std::move(x), std::move(y)};
}

inline double dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

/// S1 + S2 - 2 S3 with
///   S1 = n^-2 sum |x_i - x_j| |y_i - y_j|
///   S2 = n^-2 sum |x_i - x_j| * n^-2 sum |y_i - y_j|
///   S3 = n^-3 sum |x_i - x_j| |y_i - y_k|
/// in long double.
inline double dcov_three_sums(const depcov::PairedSample& s) {
  const std::size_t n = s.size();
  long double s1 = 0, sx = 0, sy = 0, s3 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const long double a = dist(s.x(i), s.x(j));
      const long double b = dist(s.y(i), s.y(j));
      s1 += a * b;
      sx += a;
      sy += b;
      for (std::size_t k = 0; k < n; ++k) s3 += a * dist(s.y(i), s.y(k));
    }
  }
  const long double nn = static_cast<long double>(n);
  return static_cast<double>(s1 / (nn * nn) + (sx / (nn * nn)) * (sy / (nn * nn)) -
                             2.0L * s3 / (nn * nn * nn));
}

/// All permutations of 0..n-1 by Heap's algorithm (iterative form).
inline std::vector<std::vector<int>> heap_permutations(int n) {
  std::vector<int> a(n);
  for (int i = 0; i < n; ++i) a[i] = i;
  std::vector<std::vector<int>> out{a};
  std::vector<int> c(n, 0);
  int i = 1;
  while (i < n) {
    if (c[i] < i) {
      std::swap(a[i % 2 == 0 ? 0 : c[i]], a[i]);
      out.push_back(a);
      ++c[i];
      i = 1;
    } else {
      c[i] = 0;
      ++i;
    }
  }
  return out;
}

/// f on 1-d points.
inline double f1(double a, double b, double c, double d) {
  return std::abs(a - b) - std::abs(a - c) - std::abs(b - d) + std::abs(c - d);
}

/// N^-6 sum over block 6-tuples of d^-6 sum over coordinate 6-tuples of h',
/// written as one flat 12-index loop nest over univariate data.
inline double block_sum_vh(std::span<const double> x, std::span<const double> y, std::size_t d) {
  const std::size_t N = x.size() / d;
  long double total = 0.0L;
  std::vector<std::size_t> blk(6), pos(6);
  const std::size_t outer = static_cast<std::size_t>(std::pow(N, 6));
  const std::size_t inner = static_cast<std::size_t>(std::pow(d, 6));
  for (std::size_t u = 0; u < outer; ++u) {
    std::size_t rem = u;
    for (auto& b : blk) { b = rem % N; rem /= N; }
    for (std::size_t v = 0; v < inner; ++v) {
      std::size_t r = v;
      std::size_t idx[6];
      for (int k = 0; k < 6; ++k) { idx[k] = blk[k] * d + r % d; r /= d; }
      total += f1(x[idx[0]], x[idx[1]], x[idx[2]], x[idx[3]]) *
               f1(y[idx[0]], y[idx[1]], y[idx[4]], y[idx[5]]);
    }
  }
  return static_cast<double>(total / (static_cast<long double>(outer) * inner));
}

inline bool rel_close(double got, double want, double tol) {
  return std::abs(got - want) <= tol * (1.0 + std::abs(want));
}

}  // namespace oracle
