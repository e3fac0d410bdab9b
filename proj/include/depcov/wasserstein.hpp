#pragma once

// Dyadic multiscale bound on d_p^p, the zeta helpers behind the
// mixing-process bounds, and Monte Carlo checks of the variance and product
// inequalities.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "depcov/transport.hpp"

namespace depcov {

/// Cube [lower, lower + side)^m mapped onto [0,1)^m; dyadic levels 0..max_level.
struct DyadicPartitionParams {
  int max_level = 20;
  double side = 1.0;
  double lower = 0.0;

  /// Cube covering the ball of radius K around the origin.
  static DyadicPartitionParams centered_ball(double radius, int max_level = 20) {
    return {max_level, 2.0 * radius, -radius};
  }
};

/// Sup of pairwise distances in [0,1)^m: sqrt(m).
double unit_cube_diameter(std::size_t m);

/// Upper bound on d_p^p(eta, xi) from the dyadic tree of the cube:
///   1/2 diam^p sum_{l=0}^{L} 2^{-pl} sum_F sum_{C child of F}
///       | xi(C) - xi(F) eta(C) / eta(F) |
/// plus the tail majorant diam^p 2^{-pL} / (2^p - 1), in the original
/// (unrescaled) coordinates. Only occupied cells are visited. Once every
/// occupied cell holds a single point all deeper terms are zero, so the sum
/// stops there and the tail is dropped. Requires eta(C) > 0 wherever
/// xi(C) > 0; throws ConfigError otherwise.
double dyadic_bound(double p, const EmpiricalMeasure& eta, const EmpiricalMeasure& xi,
                    const DyadicPartitionParams& params);

/// min(sqrt(t), t), t >= 0.
double zeta_fn(double t);

/// Three-branch majorant of E|n xi_n(C) - n xi(C)| for mixing processes:
///   c0 zeta(n x)                          x <= 1/n
///   c0 n^{1/2 - 1/(2r)} (n x)^{1/r}       1/n < x <= n^{-1/2}
///   c0 n^{1/4} zeta(n x)                  x > n^{-1/2}
double zeta_nr(double cell_mass, std::size_t n, double r, double c0);

/// log2(2 K M^{1/d} n^{r/d}): the deepest dyadic level that can still hold a
/// cell of mass > n^{-r} when the density is bounded by M (side-K cube).
double entropy_level_cap(double n, double r, std::size_t d, double M, double side = 1.0);

/// c0 = 1 + 64 c zeta_R(r0) for alpha(k) <= c k^{-r0}, floored at 2 + 1e-9.
double mixing_constant_c0(double c, double r0);

/// Riemann zeta for s > 1.
double riemann_zeta(double s);

/// Half-open interval [lower, upper) on the real line.
struct Cell {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  bool contains(double u) const { return u >= lower && u < upper; }
};

/// Draws a path of length n from a stationary process given a seed.
using PathSampler = std::function<std::vector<double>(std::size_t n, std::uint64_t seed)>;

/// alpha(k) <= c k^{-r0}.
struct MixingRate {
  double c = 1.0;
  double r0 = 2.0;
};

struct VarianceCheck {
  double cell_mass = 0.0;  ///< xi(F), estimated from the presample
  double empirical_var = 0.0;
  double bound = 0.0;
  double c0 = 0.0;
  bool pass = false;
};

/// Monte Carlo variance of sum_i 1_F(U_i) over `reps` paths of length n,
/// against c0 n t0^{-1} xi(F). xi(F) is estimated from one presample path
/// of `presample` draws and must be at least t0 (else ConfigError).
/// Path r uses substream_seed(seed, r + 1); the presample uses substream 0.
VarianceCheck variance_bound_check(const PathSampler& sampler, const MixingRate& rate,
                                   const Cell& cell, std::size_t n, double t0, std::size_t reps,
                                   std::uint64_t seed, std::size_t presample = 200000);

struct SubadditivityCheck {
  double lhs = 0.0;  ///< d_p^p(eta1 x eta2, xi1 x xi2)
  double rhs = 0.0;  ///< max(1, 2^{p/2-1}) (d_p^p(eta1, xi1) + d_p^p(eta2, xi2))
  bool pass = false;
};

/// Exact check of d_p^p on product measures against the sum of the marginal
/// distances. Each measure may have at most 12 atoms.
SubadditivityCheck product_subadditivity_check(double p, const EmpiricalMeasure& eta1,
                                               const EmpiricalMeasure& xi1,
                                               const EmpiricalMeasure& eta2,
                                               const EmpiricalMeasure& xi2);

/// Random instance of the check above: four measures of 1..12 atoms in
/// dimension 1 or 2 with random weights, drawn from `seed`.
SubadditivityCheck random_product_subadditivity_trial(double p, std::uint64_t seed);

}  // namespace depcov
