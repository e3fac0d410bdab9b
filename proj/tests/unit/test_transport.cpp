#include <doctest.h>

#include <random>

#include "depcov/errors.hpp"
#include "depcov/seeding.hpp"
#include "depcov/transport.hpp"

using namespace depcov;

namespace {

EmpiricalMeasure random_measure(Rng& rng, std::size_t atoms, std::size_t dim, bool uniform) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> pts(atoms * dim);
  for (double& v : pts) v = u(rng);
  if (uniform) return {dim, std::move(pts)};
  std::vector<double> w(atoms);
  double total = 0.0;
  for (double& v : w) total += (v = u(rng) + 0.01);
  for (double& v : w) v /= total;
  return {dim, std::move(pts), std::move(w)};
}

// Primal feasibility, dual feasibility, complementary slackness and a zero
// duality gap together certify that a plan is optimal.
void check_certificate(const TransportPlan& plan, std::span<const double> a,
                       std::span<const double> b, std::span<const double> cost) {
  const double tol = 1e-9;
  for (std::size_t i = 0; i < plan.rows; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < plan.cols; ++j) {
      const double f = plan.flow[i * plan.cols + j];
      const double c = cost[i * plan.cols + j];
      CHECK(f >= 0.0);
      row += f;
      CHECK(plan.u[i] + plan.v[j] <= c + tol);
      if (f > 1e-12) CHECK(std::abs(plan.u[i] + plan.v[j] - c) <= tol);
    }
    CHECK(row == doctest::Approx(a[i]).epsilon(1e-10));
  }
  double dual = 0.0;
  for (std::size_t j = 0; j < plan.cols; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < plan.rows; ++i) col += plan.flow[i * plan.cols + j];
    CHECK(col == doctest::Approx(b[j]).epsilon(1e-10));
    dual += b[j] * plan.v[j];
  }
  for (std::size_t i = 0; i < plan.rows; ++i) dual += a[i] * plan.u[i];
  CHECK(std::abs(dual - plan.cost) <= 1e-9 * (1.0 + plan.cost));
}

}  // namespace

TEST_CASE("EmpiricalMeasure validation") {
  CHECK_THROWS_AS(EmpiricalMeasure(1, {0, 1}, {0.5, 0.6}), ConfigError);
  CHECK_THROWS_AS(EmpiricalMeasure(1, {0, 1}, {1.5, -0.5}), ConfigError);
  CHECK_THROWS_AS(EmpiricalMeasure(1, {0, NAN}), ConfigError);
  CHECK_THROWS_AS(EmpiricalMeasure(2, {0, 1, 2}), ConfigError);
  CHECK_NOTHROW(EmpiricalMeasure(1, {0, 1}, {0.5, 0.5 + 5e-13}));

  const EmpiricalMeasure a(1, {0, 1});
  const EmpiricalMeasure b(2, {0, 0, 1, 1, 2, 2}, {0.2, 0.3, 0.5});
  const auto p = EmpiricalMeasure::product(a, b);
  CHECK(p.dim() == 3);
  CHECK(p.size() == 6);
  CHECK(p.atom(1)[0] == 0.0);
  CHECK(p.atom(1)[1] == 1.0);
  CHECK(p.weight(5) == doctest::Approx(0.25));
}

TEST_CASE("one-dimensional worked examples") {
  const EmpiricalMeasure zero(1, {0}), one(1, {1});
  for (double p : {1.0, 2.0, 3.5}) {
    CHECK(w_exact_1d(p, zero, one) == doctest::Approx(1.0));
    CHECK(w_exact_discrete(p, zero, one) == doctest::Approx(1.0));
  }
  const EmpiricalMeasure a(1, {0, 2}), b(1, {1, 3});
  CHECK(w_exact_1d(1.0, a, b) == doctest::Approx(1.0));
  CHECK(w_exact_1d(2.0, a, a) == 0.0);
  CHECK_THROWS_AS(w_exact_1d(1.0, a, zero), ConfigError);
  CHECK_THROWS_AS(w_exact_1d(1.0, EmpiricalMeasure(2, {0, 0}), EmpiricalMeasure(2, {1, 1})),
                  ConfigError);
  CHECK_THROWS_AS(w_exact_1d(1.0, EmpiricalMeasure(1, {0, 1}, {0.3, 0.7}), a), ConfigError);
}

TEST_CASE("two-dimensional tie") {
  const EmpiricalMeasure a(2, {0, 0, 1, 1});
  const EmpiricalMeasure b(2, {0, 1, 1, 0});
  CHECK(w_exact_discrete(1.0, a, b) == doctest::Approx(1.0));
}

TEST_CASE("discrete solver matches the sorted coupling in one dimension") {
  auto rng = make_rng(40);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + t % 12;
    const auto a = random_measure(rng, n, 1, true);
    const auto b = random_measure(rng, n, 1, true);
    const double p = 1.0 + 0.5 * (t % 5);
    CHECK(std::abs(w_exact_discrete(p, a, b) - w_exact_1d(p, a, b)) <= 1e-10);
    // The flow solver must agree with the assignment solver too.
    const auto cost = cost_matrix(p, a, b);
    const auto flow = solve_transport(a.weights(), b.weights(), cost);
    CHECK(std::abs(flow.cost - solve_assignment(cost, n).cost) <= 1e-10);
  }
}

TEST_CASE("optimality certificates") {
  auto rng = make_rng(41);
  for (int t = 0; t < 40; ++t) {
    const bool uniform = t % 2 == 0;
    const std::size_t m = 1 + t % 9;
    const std::size_t k = uniform ? m : 1 + (t * 7) % 11;
    const auto a = random_measure(rng, m, 2, uniform);
    const auto b = random_measure(rng, k, 2, uniform);
    const auto plan = optimal_plan(1.5, a, b);
    check_certificate(plan, a.weights(), b.weights(), cost_matrix(1.5, a, b));
  }
}

TEST_CASE("metric axioms") {
  auto rng = make_rng(42);
  for (int t = 0; t < 100; ++t) {
    const bool uniform = t % 3 == 0;
    const auto a = random_measure(rng, 6, 2, uniform);
    const auto b = random_measure(rng, uniform ? 6 : 5, 2, uniform);
    const auto c = random_measure(rng, uniform ? 6 : 8, 2, uniform);
    const double p = 1.0 + t % 3;
    const double ab = w_exact_discrete(p, a, b);
    CHECK(std::abs(ab - w_exact_discrete(p, b, a)) <= 1e-10);
    CHECK(w_exact_discrete(p, a, a) == 0.0);
    CHECK(w_exact_discrete(p, a, c) <= ab + w_exact_discrete(p, b, c) + 1e-10);
  }
}

TEST_CASE("size guard") {
  std::vector<double> pts(300, 0.5);
  const EmpiricalMeasure a(1, pts), b(1, pts);
  CHECK_THROWS_WITH_AS(w_exact_discrete(1.0, a, b), doctest::Contains("size guard"), ConfigError);
  CHECK_NOTHROW(w_exact_discrete(1.0, a, b, ExactOptions{600}));
  CHECK_THROWS_AS(w_exact_discrete(1.0, EmpiricalMeasure(1, {0}), EmpiricalMeasure(2, {0, 0})),
                  ConfigError);
}
