#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace depcov {

/// Finitely many weighted atoms in R^dim. Weights are nonnegative and sum to
/// 1 within 1e-12; atoms are finite.
class EmpiricalMeasure {
 public:
  /// Uniform weights.
  EmpiricalMeasure(std::size_t dim, std::vector<double> atoms);
  EmpiricalMeasure(std::size_t dim, std::vector<double> atoms, std::vector<double> weights);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> atom(std::size_t i) const { return {atoms_.data() + i * dim_, dim_}; }
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> atoms() const noexcept { return atoms_; }
  std::span<const double> weights() const noexcept { return weights_; }
  bool uniform() const noexcept { return uniform_; }

  /// Product measure on R^{a.dim + b.dim}: atom (i, j) = (a_i, b_j) with
  /// weight a_w[i] * b_w[j], enumerated with j fastest.
  static EmpiricalMeasure product(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

 private:
  std::size_t dim_;
  std::vector<double> atoms_;
  std::vector<double> weights_;
  bool uniform_;
};

/// Optimal coupling of two discrete measures. `flow` is row-major
/// (size_a x size_b). The duals satisfy u_i + v_j <= c_ij with equality
/// wherever flow is positive, which certifies optimality.
struct TransportPlan {
  double cost = 0.0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> flow;
  std::vector<double> u;
  std::vector<double> v;
};

/// Min-cost perfect matching on a square cost matrix (Hungarian method,
/// O(n^3)). Returns the plan of the uniform coupling, flow 1/n per pair.
TransportPlan solve_assignment(std::span<const double> cost, std::size_t n);

/// Min-cost transport between `supply` and `demand` (each summing to 1) by
/// successive shortest augmenting paths with Dijkstra and node potentials.
TransportPlan solve_transport(std::span<const double> supply, std::span<const double> demand,
                              std::span<const double> cost);

struct ExactOptions {
  /// Refuse problems with more atoms than this in total.
  std::size_t max_atoms = 512;
};

/// Cost matrix ||a_i - b_j||^p, row-major.
std::vector<double> cost_matrix(double p, const EmpiricalMeasure& a, const EmpiricalMeasure& b);

/// Exact optimal plan for cost ||.||_2^p: assignment when both measures are
/// uniform of equal size, min-cost flow otherwise.
TransportPlan optimal_plan(double p, const EmpiricalMeasure& a, const EmpiricalMeasure& b,
                           const ExactOptions& options = {});

/// d_p^p(a, b).
double transport_cost_p(double p, const EmpiricalMeasure& a, const EmpiricalMeasure& b,
                        const ExactOptions& options = {});

/// d_p(a, b) = transport_cost_p^{1/p}.
double w_exact_discrete(double p, const EmpiricalMeasure& a, const EmpiricalMeasure& b,
                        const ExactOptions& options = {});

/// d_p between two uniform one-dimensional measures of equal size, from the
/// sorted (quantile) coupling.
double w_exact_1d(double p, const EmpiricalMeasure& a, const EmpiricalMeasure& b);

}  // namespace depcov
