#include <doctest.h>

#include <cmath>

#include "depcov/bounds.hpp"
#include "depcov/errors.hpp"

using namespace depcov;

namespace {

// p = 1, q = 3, d = 4, n = 1e6, K = 10, M = 1, c0 = 3, m_q = 8.
BoundParams reference() {
  BoundParams bp;
  bp.p = 1.0;
  bp.q = 3.0;
  bp.d = 4;
  bp.n = 1e6;
  bp.K = 10.0;
  bp.M = 1.0;
  bp.c0 = 3.0;
  bp.m_q = 8.0;
  return bp;
}

}  // namespace

// Expected values below were evaluated independently at 20 significant digits.
TEST_CASE("alpha-mixing bound regression value") {
  const auto bp = reference();
  CHECK(dyadic_rate_term(bp) == doctest::Approx(10796.953443654702344).epsilon(1e-13));
  CHECK(bound_alpha_mixing(bp) == doctest::Approx(1079695.6643654702344).epsilon(1e-13));

  auto explicit_tail = bp;
  explicit_tail.tail_prob = 8.0 / 1000.0;
  CHECK(bound_alpha_mixing(explicit_tail) == doctest::Approx(bound_alpha_mixing(bp)).epsilon(1e-15));
}

TEST_CASE("alpha-mixing bound tail term is linear in K^p") {
  auto bp = reference();
  bp.tail_prob = 0.01;
  bp.p = 1.5;
  auto term = [](BoundParams b) {
    const double full = bound_alpha_mixing(b);
    const double rest = std::pow(3.0, b.p - 1.0) *
                        (std::pow(2.0, b.p) * std::pow(*b.tail_prob, (b.q - b.p) / b.q) *
                             std::pow(b.m_q, b.p / b.q) +
                         std::pow(b.K, b.d / 2.0) * dyadic_rate_term(b));
    return full - rest;
  };
  const double t10 = term(bp);
  bp.K = 20.0;
  const double t20 = term(bp);
  CHECK(t20 / t10 == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-6));
}

TEST_CASE("alpha-mixing bound parameter ranges") {
  auto bp = reference();
  bp.d = 2;
  CHECK_THROWS_WITH_AS(bound_alpha_mixing(bp), doctest::Contains("requires p < d/2"), ConfigError);
  bp.d = 1;
  CHECK_THROWS_WITH_AS(bound_alpha_mixing(bp), doctest::Contains("requires p < d/2"), ConfigError);
  bp = reference();
  bp.q = 1.0;
  CHECK_THROWS_WITH_AS(bound_alpha_mixing(bp), doctest::Contains("requires q > p"), ConfigError);
  bp = reference();
  bp.c0 = 2.0;
  CHECK_THROWS_WITH_AS(bound_alpha_mixing(bp), doctest::Contains("c0 > 2"), ConfigError);
  bp = reference();
  bp.p = 0.5;
  CHECK_THROWS_AS(bound_alpha_mixing(bp), ConfigError);
  bp = reference();
  bp.K = 0.0;
  CHECK_THROWS_AS(bound_alpha_mixing(bp), ConfigError);
}

TEST_CASE("stationary-segment bound") {
  auto bp = reference();
  bp.c_prime = 0.5;
  const auto terms = stationary_segment_terms(bp);
  CHECK(terms.dyadic == doctest::Approx(27318.225089222268614).epsilon(1e-13));
  CHECK(terms.tail == doctest::Approx(455.30375148703781024).epsilon(1e-13));
  CHECK(bound_stationary_segments(bp) == doctest::Approx(27773.528840709306424).epsilon(1e-13));

  auto doubled = bp;
  doubled.c_prime = 1.0;
  CHECK(stationary_segment_terms(doubled).tail == 2.0 * terms.tail);
  CHECK(stationary_segment_terms(doubled).dyadic == terms.dyadic);

  // p = 2 removes the n-dependence of the first term.
  auto p2 = bp;
  p2.p = 2.0;
  p2.d = 6;
  auto p2n = p2;
  p2n.n = 17.0;
  CHECK(stationary_segment_terms(p2).dyadic == stationary_segment_terms(p2n).dyadic);

  bp.d_prime = 5;
  CHECK_THROWS_AS(bound_stationary_segments(bp), ConfigError);
}

TEST_CASE("phi-mixing bound") {
  CHECK(bound_phi_mixing(1.0, 4, 16.0, 2.5, 2.0) == doctest::Approx(320.0).epsilon(1e-15));
  CHECK(bound_phi_mixing(1.0, 4, 16.0, 2.5) == doctest::Approx(320.0).epsilon(1e-15));

  const double a = bound_phi_mixing(1.5, 5, 100.0, 3.0);
  const double b = bound_phi_mixing(1.5, 5, 400.0, 3.0);
  CHECK(b / a == doctest::Approx(std::pow(4.0, -1.5 / 5.0)).epsilon(1e-14));

  // For large d the bracket tends to 1 + 1/(1 - 2^-p).
  const double p = 1.0;
  const std::size_t d = 60;
  const double n = 1.0;
  const double base = std::pow(2.0, d + 1.0) * std::pow(std::sqrt(60.0), p);
  CHECK(bound_phi_mixing(p, d, n, 1.0) / base == doctest::Approx(1.0 + 2.0).epsilon(1e-8));

  CHECK_THROWS_WITH_AS(bound_phi_mixing(2.0, 4, 16.0, 2.5), doctest::Contains("p < d/2"),
                       ConfigError);
  CHECK_THROWS_AS(bound_phi_mixing(3.0, 4, 16.0, 2.5), ConfigError);
}
