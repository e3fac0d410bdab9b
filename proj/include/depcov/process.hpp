#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "depcov/bootstrap.hpp"
#include "depcov/seeding.hpp"
#include "depcov/series.hpp"

namespace depcov {

/// Innovation law. Both choices have a Lebesgue density.
struct Innovation {
  enum class Kind { gaussian, uniform };

  Kind kind = Kind::gaussian;
  double sigma = 1.0;  ///< gaussian standard deviation
  double lower = -1.0;  ///< uniform support
  double upper = 1.0;

  static Innovation gaussian(double sigma) { return {Kind::gaussian, sigma, 0.0, 0.0}; }
  static Innovation uniform(double lower, double upper) {
    return {Kind::uniform, 0.0, lower, upper};
  }
};

/// U_k = sum_i ar[i] U_{k-1-i} + sum_i ma[i] e_{k-1-i} + e_k.
struct ArmaSpec {
  std::vector<double> ar;
  std::vector<double> ma;
  Innovation innovation;
  /// Defaults to 10 * (p + q + 1) + 100.
  std::optional<std::size_t> burn_in;

  std::size_t effective_burn_in() const;

  static ArmaSpec iid(Innovation e = Innovation::gaussian(1.0)) { return {{}, {}, e, {}}; }
  static ArmaSpec ar1(double phi, double sigma = 1.0) {
    return {{phi}, {}, Innovation::gaussian(sigma), {}};
  }
};

struct ArmaCheck {
  std::vector<std::string> errors;
  /// Roots of 1 - sum phi_i u^i and 1 + sum psi_i u^i.
  std::vector<std::complex<double>> ar_roots;
  std::vector<std::complex<double>> ma_roots;

  bool valid() const { return errors.empty(); }
};

/// Roots of c[0] + c[1] u + ... + c[m] u^m via companion-matrix eigenvalues.
/// Trailing zero coefficients are dropped first.
std::vector<std::complex<double>> polynomial_roots(std::span<const double> coefficients);

/// Causality (every AR root has modulus > 1 + 1e-8), no AR/MA root closer
/// than 1e-8 to each other, finite coefficients, valid innovation law.
ArmaCheck validate_arma(const ArmaSpec& spec);

/// Throws ConfigError listing every problem found by validate_arma.
void require_valid(const ArmaSpec& spec);

/// Zero-initialised recursion; the burn-in prefix is discarded.
std::vector<double> simulate_arma(const ArmaSpec& spec, std::size_t n, std::uint64_t seed);

struct Scenario {
  enum class Kind { independent_pair, linear_dependent, cross_lag, common_factor };

  Kind kind = Kind::independent_pair;
  /// Loading of the shared term for linear_dependent and common_factor.
  double kappa = 0.0;
  ArmaSpec x_process = ArmaSpec::iid();
  /// Noise process for linear_dependent; unused for cross_lag.
  ArmaSpec y_process = ArmaSpec::iid();
  /// Shared factor for common_factor.
  ArmaSpec factor_process = ArmaSpec::ar1(0.5);
};

std::string to_string(Scenario::Kind kind);
Scenario::Kind scenario_kind_from_string(const std::string& name);

/// Univariate paired sample of length n:
///  - independent_pair: X and Y simulated from disjoint substreams;
///  - linear_dependent: Y_k = kappa * X_k + noise_k;
///  - cross_lag: Y_k = X_{k-1} with X iid (one extra presample draw);
///  - common_factor: X_k = U_k + kappa F_k, Y_k = V_k + kappa F_k.
PairedSample make_scenario_sample(const Scenario& sc, std::size_t n, std::uint64_t seed);

struct ExperimentReport {
  Scenario scenario;
  std::size_t n = 0;
  std::size_t reps = 0;
  BootstrapConfig config;
  std::uint64_t seed = 0;
  double rejection_rate = 0.0;
  double mean_stat = 0.0;
  /// Per repetition, in repetition order.
  std::vector<double> statistics;
  std::vector<double> p_values;
  std::vector<double> quantiles;
  std::vector<bool> rejections;
  double wall_time_s = 0.0;
};

/// Runs independence_test on `reps` scenario samples. Repetition r simulates
/// from substream_seed(substream_seed(seed, r), 0) and bootstraps with
/// base seed substream_seed(substream_seed(seed, r), 1). Repetitions run in
/// parallel; results do not depend on the worker count.
ExperimentReport size_power_experiment(const Scenario& sc, std::size_t n, std::size_t reps,
                                       const BootstrapConfig& cfg, std::uint64_t seed);

/// Block k (0-based) of a block-array sample: fresh length-d simulations of
/// both processes from substream k of the X and Y parents.
PairedSample block_array_segment(const ArmaSpec& x, const ArmaSpec& y, std::size_t d,
                                 std::uint64_t seed, std::size_t k);

/// N = floor(n/d) independent stationary segments of length d, concatenated.
PairedSample block_array_sample(const ArmaSpec& x, const ArmaSpec& y, std::size_t n,
                                std::size_t d, std::uint64_t seed);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double compare_distributions(std::span<const double> a, std::span<const double> b);

/// Asymptotic two-sample KS critical value c(level) * sqrt((na + nb) / (na nb)),
/// c(level) = sqrt(-ln(level / 2) / 2).
double ks_critical_value(std::size_t na, std::size_t nb, double level = 0.05);

}  // namespace depcov
