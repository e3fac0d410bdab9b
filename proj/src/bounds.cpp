#include "depcov/bounds.hpp"

#include <cmath>
#include <string>

#include "depcov/errors.hpp"

namespace depcov {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

void check_p_against_d(double p, std::size_t d) {
  require(p >= 1.0, "requires p >= 1");
  require(d >= 1, "requires d >= 1");
  const double half = static_cast<double>(d) / 2.0;
  require(p != half, "requires p < d/2 (p = d/2 makes 1 - 2^{p-d/2} vanish)");
  require(p < half, "requires p < d/2");
}

void check_alpha(const BoundParams& bp) {
  require(std::isfinite(bp.p) && std::isfinite(bp.q), "requires finite p and q");
  check_p_against_d(bp.p, bp.d);
  require(bp.q > bp.p, "requires q > p");
  require(bp.n >= 1.0 && std::isfinite(bp.n), "requires n >= 1");
  require(bp.K > 0.0 && std::isfinite(bp.K), "requires K > 0");
  require(bp.M > 0.0 && std::isfinite(bp.M), "requires M > 0");
  require(bp.c0 > 2.0 && std::isfinite(bp.c0), "requires c0 > 2");
  require(bp.r0 > 1.0, "requires r0 > 1");
  require(bp.m_q >= 0.0 && std::isfinite(bp.m_q), "requires m_q >= 0");
  if (bp.tail_prob) {
    require(*bp.tail_prob >= 0.0 && *bp.tail_prob <= 1.0, "requires 0 <= tail_prob <= 1");
  }
}

double diam_p(double p, std::size_t d) {
  return std::pow(std::sqrt(static_cast<double>(d)), p);
}

}  // namespace

double alpha_geometric_factor(const BoundParams& bp) {
  check_alpha(bp);
  const double p = bp.p;
  const double d = static_cast<double>(bp.d);
  const double bracket = (1.0 + std::pow(bp.M, (d / 2.0 - p) / d)) / (1.0 - std::pow(2.0, p - d / 2.0)) +
                         1.0 / (1.0 - std::pow(2.0, -p)) + 4.0 * std::pow(bp.M, 1.0 / d);
  return std::pow(2.0, 1.5 * d - p) * diam_p(p, bp.d) * bracket;
}

double dyadic_rate_term(const BoundParams& bp) {
  const double d = static_cast<double>(bp.d);
  return bp.c0 * std::pow(bp.n, -(bp.p - 2.0) / (2.0 * d)) * alpha_geometric_factor(bp);
}

double bound_alpha_mixing(const BoundParams& bp) {
  check_alpha(bp);
  const double p = bp.p;
  const double q = bp.q;
  const double d = static_cast<double>(bp.d);
  const double t = bp.tail_prob ? *bp.tail_prob : std::min(1.0, bp.m_q / std::pow(bp.K, q));
  const double tail = std::pow(t, (q - p) / q) * std::pow(bp.m_q, p / q) + t * std::pow(bp.K, p);
  return std::pow(3.0, p - 1.0) *
         (std::pow(2.0, p) * tail + std::pow(bp.K, d / 2.0) * dyadic_rate_term(bp));
}

SegmentBoundTerms stationary_segment_terms(const BoundParams& bp) {
  check_alpha(bp);
  require(bp.d_prime >= 1 && bp.d_prime <= bp.d, "requires 1 <= d' <= d");
  require(bp.c_prime > 0.0 && std::isfinite(bp.c_prime), "requires c' > 0");
  require(bp.m_q_prime >= 0.0 && std::isfinite(bp.m_q_prime), "requires m_q' >= 0");
  const double p = bp.p;
  const double q = bp.q;
  const double d = static_cast<double>(bp.d);
  SegmentBoundTerms out;
  out.dyadic = std::pow(6.0, p) * bp.c0 * std::pow(bp.n, -(p - 2.0) / (4.0 * d)) *
               alpha_geometric_factor(bp);
  out.tail = std::pow(6.0, p) * 2.0 * bp.c_prime * std::pow(d, 1.0 + q / 2.0) *
             std::pow(bp.n, (p - 2.0) * (p - q) / (2.0 * d * d));
  return out;
}

double bound_stationary_segments(const BoundParams& bp) {
  const auto terms = stationary_segment_terms(bp);
  return terms.dyadic + terms.tail;
}

double bound_phi_mixing(double p, std::size_t d, double n, double c0, std::optional<double> diam) {
  require(std::isfinite(p), "requires finite p");
  check_p_against_d(p, d);
  require(n >= 1.0 && std::isfinite(n), "requires n >= 1");
  require(c0 > 0.0 && std::isfinite(c0), "requires c0 > 0");
  const double dd = static_cast<double>(d);
  const double diameter = diam ? *diam : std::sqrt(dd);
  require(diameter > 0.0 && std::isfinite(diameter), "requires diam > 0");
  return std::pow(n, -p / dd) * c0 * std::pow(2.0, dd + 1.0) * std::pow(diameter, p) *
         (1.0 / (1.0 - std::pow(2.0, p - dd / 2.0)) + 1.0 / (1.0 - std::pow(2.0, -p)));
}

}  // namespace depcov
