#pragma once

#include <cstddef>
#include <optional>

namespace depcov {

/// Inputs of the expected-distance bounds for E d_p^p(xi_n, xi).
struct BoundParams {
  double p = 1.0;
  double q = 2.0;        ///< moment order, q > p
  std::size_t d = 4;     ///< dimension
  double n = 1.0;        ///< sample size
  double K = 1.0;        ///< support radius
  double M = 1.0;        ///< xi(F) <= M vol(F)
  double c0 = 3.0;       ///< mixing constant, > 2
  double r0 = 2.0;       ///< alpha(k) = O(k^{-r0}), r0 > 1
  double m_q = 1.0;      ///< q-th moment of xi
  /// xi(U_K(0)^C); defaults to the Markov bound m_q / K^q.
  std::optional<double> tail_prob;
  std::size_t d_prime = 1;   ///< segment length for the stationary-segment form
  double m_q_prime = 1.0;    ///< q-th moment of one coordinate
  double c_prime = 1.0;      ///< tail constant of the stationary-segment form
};

/// The bracketed constant shared by both alpha-mixing bounds:
///   2^{3d/2-p} diam^p ((1 + M^{(d/2-p)/d}) / (1 - 2^{p-d/2}) + 1/(1 - 2^{-p}) + 4 M^{1/d}).
double alpha_geometric_factor(const BoundParams& bp);

/// M^p = c0 n^{-(p-2)/(2d)} * alpha_geometric_factor.
double dyadic_rate_term(const BoundParams& bp);

/// 3^{p-1} { 2^p (t^{(q-p)/q} m_q^{p/q} + t K^p) + K^{d/2} M^p } with
/// t = tail probability outside the ball of radius K.
/// Requires 1 <= p < d/2 and q > p.
double bound_alpha_mixing(const BoundParams& bp);

/// 6^p c0 2^{3d/2-p} diam^p n^{-(p-2)/(4d)} (...) + 6^p 2 c' d^{1+q/2} n^{(p-2)(p-q)/(2 d^2)}:
/// the alpha-mixing bound with K = n^{(p-2)/(2 d^2)}, for xi the law of d'
/// consecutive observations. Same parameter ranges plus d' <= d.
double bound_stationary_segments(const BoundParams& bp);

/// Its two summands, for inspection.
struct SegmentBoundTerms {
  double dyadic = 0.0;
  double tail = 0.0;
};
SegmentBoundTerms stationary_segment_terms(const BoundParams& bp);

/// n^{-p/d} c0 2^{d+1} diam^p (1/(1 - 2^{p-d/2}) + 1/(1 - 2^{-p})), the
/// phi-mixing bound on E d_p^p. Requires 1 <= p < d/2; diam defaults to sqrt(d).
double bound_phi_mixing(double p, std::size_t d, double n, double c0,
                        std::optional<double> diam = std::nullopt);

}  // namespace depcov
