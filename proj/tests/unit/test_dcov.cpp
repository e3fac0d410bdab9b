#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "depcov/dcov.hpp"
#include "depcov/errors.hpp"
#include "depcov/kernels.hpp"
#include "depcov/parallel.hpp"
#include "oracles.hpp"

using namespace depcov;

namespace {

std::vector<double> pt(double v) { return {v}; }

std::array<Observation, 6> univariate_tuple(const std::vector<double>& x,
                                            const std::vector<double>& y) {
  std::array<Observation, 6> z;
  for (int i = 0; i < 6; ++i) z[i] = {{&x[i], 1}, {&y[i], 1}};
  return z;
}

}  // namespace

TEST_CASE("kernel_f hand values and symmetry") {
  const auto a = pt(0), b = pt(1);
  CHECK(kernel_f(a, b, a, b) == 2.0);
  CHECK(kernel_f(a, a, a, a) == 0.0);

  auto rng = make_rng(11);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> p(8);
    for (double& v : p) v = g(rng);
    std::span<const double> x1(&p[0], 2), x2(&p[2], 2), x3(&p[4], 2), x4(&p[6], 2);
    CHECK(kernel_f(x1, x2, x3, x4) == doctest::Approx(kernel_f(x2, x1, x4, x3)).epsilon(1e-14));
  }
  const std::vector<double> two{0, 0};
  CHECK_THROWS_AS(kernel_f(a, two, a, a), ConfigError);
}

TEST_CASE("kernel_h_prime hand values") {
  const std::vector<double> x{0, 1, 0, 1, 5, 9};
  const std::vector<double> y{0, 1, 7, -2, 0, 1};
  CHECK(kernel_h_prime(univariate_tuple(x, y)) == 4.0);

  const std::vector<double> flat(6, 3.0);
  CHECK(kernel_h_prime(univariate_tuple(x, flat)) == 0.0);
  CHECK(kernel_h_prime(univariate_tuple(flat, y)) == 0.0);
}

TEST_CASE("kernel_h_sym matches an independent permutation enumerator") {
  const auto perms = oracle::heap_permutations(6);
  REQUIRE(perms.size() == 720);
  auto rng = make_rng(12);
  std::normal_distribution<double> g;
  for (int t = 0; t < 10; ++t) {
    std::vector<double> x(6), y(6);
    for (double& v : x) v = g(rng);
    for (double& v : y) v = g(rng);
    long double total = 0.0L;
    for (const auto& p : perms) {
      total += oracle::f1(x[p[0]], x[p[1]], x[p[2]], x[p[3]]) *
               oracle::f1(y[p[0]], y[p[1]], y[p[4]], y[p[5]]);
    }
    const double want = static_cast<double>(total / 720.0L);
    const double got = kernel_h_sym(univariate_tuple(x, y));
    CHECK(oracle::rel_close(got, want, 1e-12));

    // Symmetric in its arguments.
    std::vector<double> xs(6), ys(6);
    const auto& p = perms[137];
    for (int i = 0; i < 6; ++i) {
      xs[i] = x[p[i]];
      ys[i] = y[p[i]];
    }
    CHECK(oracle::rel_close(kernel_h_sym(univariate_tuple(xs, ys)), got, 1e-12));
  }
  const std::vector<double> same(6, 1.5);
  CHECK(kernel_h_sym(univariate_tuple(same, same)) == 0.0);
}

TEST_CASE("dcov worked examples") {
  const auto s = PairedSample::univariate({0, 1}, {0, 1});
  CHECK(dcov_fast(s).value == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(dcov_v_oracle(s).value == doctest::Approx(0.25).epsilon(1e-15));

  const auto one = PairedSample::univariate({3}, {4});
  CHECK(dcov_fast(one).value == 0.0);
  CHECK(dcov_v_oracle(one).value == 0.0);

  const auto flat = PairedSample::univariate({2, 2, 2, 2}, {1, 5, -3, 0});
  CHECK(dcov_fast(flat).value == 0.0);
  CHECK(dcov_v_oracle(flat).value == 0.0);

  // Exact rational value 524/625 from the three-sum formula.
  const auto fixed = PairedSample::univariate({0, 1, 3, 7, 2}, {1, 0, 4, 2, 2});
  CHECK(dcov_fast(fixed).value == doctest::Approx(0.8384).epsilon(1e-13));
  CHECK(dcov_v_oracle(fixed).value == doctest::Approx(0.8384).epsilon(1e-13));

  CHECK_THROWS_AS(dcov_v_oracle(PairedSample::univariate(std::vector<double>(13, 0.0),
                                                          std::vector<double>(13, 0.0))),
                  ConfigError);
  CHECK_THROWS_AS(dcov_fast(fixed, DcovOptions{4}), ConfigError);
}

TEST_CASE("dcov_fast agrees with both oracles") {
  auto rng = make_rng(13);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + t % 7;
    const auto s = oracle::random_sample(rng, n, 1 + t % 2, 1 + (t / 2) % 2);
    const double fast = dcov_fast(s).value;
    CHECK(oracle::rel_close(fast, dcov_v_oracle(s).value, 1e-10));
    CHECK(oracle::rel_close(fast, oracle::dcov_three_sums(s), 1e-10));
  }
}

TEST_CASE("dcov invariances") {
  auto rng = make_rng(14);
  for (int t = 0; t < 20; ++t) {
    const auto s = oracle::random_sample(rng, 40, 2, 1);
    const double base = dcov_fast(s).value;
    CHECK(base >= 0.0);

    const double a = -2.5, b = 0.75;
    std::vector<double> x(s.x_data().begin(), s.x_data().end());
    std::vector<double> y(s.y_data().begin(), s.y_data().end());
    for (double& v : x) v = a * v + 3.0;
    for (double& v : y) v = b * v - 1.0;
    const double scaled = dcov_fast(PairedSample(2, 1, x, y)).value;
    CHECK(oracle::rel_close(scaled, std::abs(a) * std::abs(b) * base, 1e-9));

    // One permutation applied to whole rows.
    std::vector<std::size_t> perm(40);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> px, py;
    for (auto k : perm) {
      px.insert(px.end(), s.x(k).begin(), s.x(k).end());
      py.insert(py.end(), s.y(k).begin(), s.y(k).end());
    }
    const double permuted = dcov_fast(PairedSample(2, 1, px, py)).value;
    CHECK(oracle::rel_close(permuted, base, 1e-12));
  }
}

TEST_CASE("CenteredDistanceMatrix rows sum to zero") {
  auto rng = make_rng(15);
  const auto s = oracle::random_sample(rng, 30, 3, 1);
  const CenteredDistanceMatrix A(s.x_data(), 3);
  for (std::size_t i = 0; i < A.size(); ++i) {
    CHECK(std::abs(A.row_sum(i)) <= 1e-9 * 30 * A.mean_distance());
    for (std::size_t j = 0; j < A.size(); ++j) CHECK(A(i, j) == A(j, i));
  }
}

TEST_CASE("finish_dcov clamps rounding noise only") {
  CHECK(finish_dcov(-1e-12, 10, 1.0, 1.0).value == 0.0);
  CHECK_THROWS_AS(finish_dcov(-1.0, 10, 1.0, 1.0), ConsistencyError);
  CHECK(finish_dcov(50.0, 10, 1.0, 1.0).value == doctest::Approx(0.5));
}

TEST_CASE("serial and parallel kernels are bit-identical") {
  auto rng = make_rng(16);
  const auto s = oracle::random_sample(rng, 211, 3, 2);
  for (int threads : {1, 2, 3, 8}) {
    ThreadScope scope(threads);
    const auto a = kernels::pairwise_distances(s.x_data(), 3);
    const auto b = kernels::pairwise_distances(s.y_data(), 2);
    const auto as = kernels::pairwise_distances_serial(s.x_data(), 3);
    const auto bs = kernels::pairwise_distances_serial(s.y_data(), 2);
    CHECK(a.values == as.values);
    CHECK(b.values == bs.values);
    const auto cp = kernels::centered_product(a, b);
    const auto cs = kernels::centered_product_serial(as, bs);
    CHECK(cp.sum == cs.sum);
    CHECK(cp.mean_a == cs.mean_a);

    std::vector<std::size_t> ia(211), ib(211);
    std::uniform_int_distribution<std::size_t> pick(0, 210);
    for (auto& v : ia) v = pick(rng);
    for (auto& v : ib) v = pick(rng);
    CHECK(kernels::centered_product(a, ia, b, ib).sum ==
          kernels::centered_product_serial(as, ia, bs, ib).sum);
  }
}

TEST_CASE("indexed centred product equals recomputation") {
  auto rng = make_rng(17);
  const auto s = oracle::random_sample(rng, 25, 2, 1);
  std::vector<std::size_t> ia(25), ib(25);
  std::uniform_int_distribution<std::size_t> pick(0, 24);
  for (auto& v : ia) v = pick(rng);
  for (auto& v : ib) v = pick(rng);
  std::vector<double> xr, yr;
  for (std::size_t i = 0; i < 25; ++i) {
    xr.insert(xr.end(), s.x(ia[i]).begin(), s.x(ia[i]).end());
    yr.insert(yr.end(), s.y(ib[i]).begin(), s.y(ib[i]).end());
  }
  const auto direct = kernels::centered_product_serial(kernels::pairwise_distances_serial(xr, 2),
                                                       kernels::pairwise_distances_serial(yr, 1));
  const auto looked_up = kernels::centered_product_serial(
      kernels::pairwise_distances_serial(s.x_data(), 2), ia,
      kernels::pairwise_distances_serial(s.y_data(), 1), ib);
  CHECK(direct.sum == looked_up.sum);
}

TEST_CASE("block kernel H") {
  auto rng = make_rng(18);
  SUBCASE("d = 1 is a single h' evaluation") {
    const auto s = oracle::random_sample(rng, 6, 1, 1);
    const auto p = partition_blocks(s, 1);
    std::array<Block, 6> b;
    std::array<Observation, 6> z;
    for (std::size_t k = 0; k < 6; ++k) {
      b[k] = block_of(p, k);
      z[k] = s.row(k);
    }
    CHECK(block_kernel_H(b) == kernel_h_prime(z));
  }
  SUBCASE("identical blocks give zero") {
    const auto s = PairedSample::univariate({1, 1, 1, 1}, {2, 2, 2, 2});
    const auto p = partition_blocks(s, 2);
    std::array<Block, 6> b;
    b.fill(block_of(p, 0));
    CHECK(block_kernel_H(b) == 0.0);
  }
  SUBCASE("d = 2 equals an explicit loop nest") {
    const auto s = oracle::random_sample(rng, 12, 1, 1);
    const auto p = partition_blocks(s, 2);
    const std::size_t pick[6] = {0, 3, 5, 1, 1, 4};
    std::array<Block, 6> b;
    for (int k = 0; k < 6; ++k) b[k] = block_of(p, pick[k]);
    long double total = 0.0L;
    const auto x = s.x_data();
    const auto y = s.y_data();
    for (int c = 0; c < 64; ++c) {
      std::size_t i[6];
      for (int k = 0; k < 6; ++k) i[k] = 2 * pick[k] + ((c >> k) & 1);
      total += oracle::f1(x[i[0]], x[i[1]], x[i[2]], x[i[3]]) *
               oracle::f1(y[i[0]], y[i[1]], y[i[4]], y[i[5]]);
    }
    CHECK(oracle::rel_close(block_kernel_H(b), static_cast<double>(total / 64.0L), 1e-12));
  }
  SUBCASE("unequal blocks are refused") {
    const auto s = oracle::random_sample(rng, 6, 1, 1);
    const auto p2 = partition_blocks(s, 2);
    const auto p3 = partition_blocks(s, 3);
    std::array<Block, 6> b;
    b.fill(block_of(p2, 0));
    b[5] = block_of(p3, 0);
    CHECK_THROWS_AS(block_kernel_H(b), ConfigError);
  }
}

TEST_CASE("V_H identity on small samples") {
  auto rng = make_rng(19);
  for (std::size_t n = 2; n <= 8; ++n) {
    for (std::size_t d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      const auto s = oracle::random_sample(rng, n, 1, 1);
      const auto p = partition_blocks(s, d);
      const double vh = oracle::block_sum_vh(s.x_data(), s.y_data(), d);
      CHECK(oracle::rel_close(dcov_blocks(p).value, vh, 1e-10));
    }
  }
  const auto s = oracle::random_sample(rng, 9, 1, 1);
  CHECK(dcov_blocks(partition_blocks(s, 9)).value == dcov_fast(s).value);
  CHECK(dcov_blocks(partition_blocks(s, 1)).value == dcov_fast(s).value);
  CHECK(dcov_blocks(partition_blocks(s, 4)).value == dcov_fast(s.prefix(8)).value);
}

TEST_CASE("Hoeffding projection degeneracy") {
  auto rng = make_rng(20);
  const auto pool = oracle::random_sample(rng, 50, 1, 2);
  const PointSet xs{pool.x_data(), 1};
  const PointSet ys{pool.y_data(), 2};
  const auto a = hoeffding_h1_estimate(pool.row(3), xs, ys, 10000, 99);
  const auto b = hoeffding_h1_estimate(pool.row(3), xs, ys, 10000, 99);
  CHECK(a.estimate == b.estimate);
  CHECK(a.std_error == b.std_error);
  CHECK(std::abs(a.estimate) <= 4 * a.std_error);

  const std::vector<double> flat(50, 2.0);
  const std::vector<double> two{2.0};
  const Observation z{two, pool.y(0)};
  const auto c = hoeffding_h1_estimate(z, PointSet{flat, 1}, ys, 1000, 1);
  CHECK(c.estimate == 0.0);

  CHECK_THROWS_AS(hoeffding_h1_estimate(pool.row(0), xs, ys, 99, 1), ConfigError);
  CHECK_THROWS_AS(hoeffding_h1_estimate(pool.row(0), PointSet{{}, 1}, ys, 1000, 1), ConfigError);
}
