#include "depcov/transport.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>

#include "depcov/errors.hpp"
#include "depcov/kernels.hpp"

namespace depcov {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMassEps = 1e-15;

void check_pair(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
  if (a.dim() != b.dim()) throw ConfigError("measures differ in dimension");
}

}  // namespace

EmpiricalMeasure::EmpiricalMeasure(std::size_t dim, std::vector<double> atoms)
    : EmpiricalMeasure(dim, atoms,
                       std::vector<double>(dim == 0 ? 0 : atoms.size() / dim,
                                           dim == 0 || atoms.empty()
                                               ? 0.0
                                               : 1.0 / static_cast<double>(atoms.size() / dim))) {
  uniform_ = true;
}

EmpiricalMeasure::EmpiricalMeasure(std::size_t dim, std::vector<double> atoms,
                                   std::vector<double> weights)
    : dim_(dim), atoms_(std::move(atoms)), weights_(std::move(weights)), uniform_(false) {
  if (dim_ == 0) throw ConfigError("measure dimension must be positive");
  if (atoms_.empty() || atoms_.size() % dim_ != 0) {
    throw ConfigError("atom array must hold a positive multiple of dim values");
  }
  if (weights_.size() != atoms_.size() / dim_) throw ConfigError("one weight per atom required");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ConfigError("weights must sum to 1 (|sum - 1| <= 1e-12)");
  }
  for (double c : atoms_) {
    if (!std::isfinite(c)) throw ConfigError("atoms must be finite");
  }
}

EmpiricalMeasure EmpiricalMeasure::product(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
  std::vector<double> atoms;
  std::vector<double> weights;
  atoms.reserve(a.size() * b.size() * (a.dim() + b.dim()));
  weights.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const auto ai = a.atom(i);
      const auto bj = b.atom(j);
      atoms.insert(atoms.end(), ai.begin(), ai.end());
      atoms.insert(atoms.end(), bj.begin(), bj.end());
      weights.push_back(a.weight(i) * b.weight(j));
    }
  }
  // Products of weights summing to 1 drift by a few ulps; renormalise.
  double total = 0.0;
  for (double w : weights) total += w;
  for (double& w : weights) w /= total;
  EmpiricalMeasure out(a.dim() + b.dim(), std::move(atoms), std::move(weights));
  out.uniform_ = a.uniform_ && b.uniform_;
  return out;
}

TransportPlan solve_assignment(std::span<const double> cost, std::size_t n) {
  if (n == 0 || cost.size() != n * n) throw ConfigError("assignment needs an n x n cost matrix");
  // Shortest augmenting path Hungarian method, 1-based with a dummy column 0.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  TransportPlan plan;
  plan.rows = plan.cols = n;
  plan.flow.assign(n * n, 0.0);
  const double mass = 1.0 / static_cast<double>(n);
  double total = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t i = match[j];
    plan.flow[(i - 1) * n + (j - 1)] = mass;
    total += cost[(i - 1) * n + (j - 1)];
  }
  plan.cost = total * mass;
  plan.u.assign(u.begin() + 1, u.end());
  plan.v.assign(v.begin() + 1, v.end());
  return plan;
}

TransportPlan solve_transport(std::span<const double> supply, std::span<const double> demand,
                              std::span<const double> cost) {
  const std::size_t m = supply.size();
  const std::size_t k = demand.size();
  if (m == 0 || k == 0 || cost.size() != m * k) {
    throw ConfigError("transport needs an m x k cost matrix");
  }
  // Nodes: sources 0..m-1, sinks m..m+k-1, super source S, super sink T.
  // Residual arcs: S->i (remaining supply), i->j (unbounded), j->i (flow on
  // i->j), j->T (remaining demand). Reduced costs stay nonnegative under the
  // potential update pi += min(dist, dist[T]).
  const std::size_t source = m + k;
  const std::size_t sink = m + k + 1;
  const std::size_t nodes = m + k + 2;
  std::vector<double> remaining_supply(supply.begin(), supply.end());
  std::vector<double> remaining_demand(demand.begin(), demand.end());
  std::vector<double> flow(m * k, 0.0);
  // Sources currently shipping to each sink; entries whose flow dropped to
  // zero are skipped and pruned lazily.
  std::vector<std::vector<std::size_t>> shipping(k);
  std::vector<char> listed(m * k, 0);
  std::vector<double> potential(nodes, 0.0);
  std::vector<double> dist(nodes);
  std::vector<std::size_t> parent(nodes);
  std::vector<char> done(nodes);
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;

  auto relax = [&](std::size_t from, std::size_t to, double c) {
    if (done[to]) return;
    const double nd = dist[from] + std::max(0.0, c + potential[from] - potential[to]);
    if (nd < dist[to]) {
      dist[to] = nd;
      parent[to] = from;
      queue.emplace(nd, to);
    }
  };

  while (true) {
    double left = 0.0;
    for (double s : remaining_supply) left += s;
    if (left <= 1e-13) break;

    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(parent.begin(), parent.end(), kNone);
    std::fill(done.begin(), done.end(), 0);
    dist[source] = 0.0;
    queue.emplace(0.0, source);
    while (!queue.empty()) {
      const auto [d, best] = queue.top();
      queue.pop();
      if (done[best] || d > dist[best]) continue;
      if (best == sink) break;
      done[best] = 1;
      if (best == source) {
        for (std::size_t i = 0; i < m; ++i) {
          if (remaining_supply[i] > kMassEps) relax(source, i, 0.0);
        }
      } else if (best < m) {
        for (std::size_t j = 0; j < k; ++j) relax(best, m + j, cost[best * k + j]);
      } else {
        const std::size_t j = best - m;
        auto& list = shipping[j];
        std::size_t keep = 0;
        for (std::size_t i : list) {
          if (flow[i * k + j] > kMassEps) {
            list[keep++] = i;
            relax(best, i, -cost[i * k + j]);
          } else {
            listed[i * k + j] = 0;
          }
        }
        list.resize(keep);
        if (remaining_demand[j] > kMassEps) relax(best, sink, 0.0);
      }
    }
    queue = {};
    if (dist[sink] == kInf) break;

    const double reach = dist[sink];
    for (std::size_t v = 0; v < nodes; ++v) potential[v] += std::min(dist[v], reach);

    const std::size_t last = parent[sink];
    double push = remaining_demand[last - m];
    std::size_t v = last;
    while (parent[v] != source) {
      const std::size_t u = parent[v];
      if (u >= m) push = std::min(push, flow[v * k + (u - m)]);
      v = u;
    }
    const std::size_t first = v;
    push = std::min(push, remaining_supply[first]);

    v = last;
    while (v != first) {
      const std::size_t u = parent[v];
      if (u < m) {
        const std::size_t arc = u * k + (v - m);
        flow[arc] += push;
        if (!listed[arc]) {
          listed[arc] = 1;
          shipping[v - m].push_back(u);
        }
      } else {
        double& f = flow[v * k + (u - m)];
        f -= push;
        if (f < kMassEps) f = 0.0;
      }
      v = u;
    }
    remaining_supply[first] -= push;
    if (remaining_supply[first] < kMassEps) remaining_supply[first] = 0.0;
    remaining_demand[last - m] -= push;
    if (remaining_demand[last - m] < kMassEps) remaining_demand[last - m] = 0.0;
  }

  TransportPlan plan;
  plan.rows = m;
  plan.cols = k;
  plan.flow = std::move(flow);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) total += plan.flow[i * k + j] * cost[i * k + j];
  }
  plan.cost = total;
  plan.u.resize(m);
  plan.v.resize(k);
  for (std::size_t i = 0; i < m; ++i) plan.u[i] = -potential[i];
  for (std::size_t j = 0; j < k; ++j) plan.v[j] = potential[m + j];
  return plan;
}

std::vector<double> cost_matrix(double p, const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
  check_pair(a, b);
  std::vector<double> cost(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double dist = kernels::euclidean(a.atom(i), b.atom(j));
      cost[i * b.size() + j] = p == 1.0 ? dist : std::pow(dist, p);
    }
  }
  return cost;
}

TransportPlan optimal_plan(double p, const EmpiricalMeasure& a, const EmpiricalMeasure& b,
                           const ExactOptions& options) {
  if (!(p >= 1.0)) throw ConfigError("requires p >= 1");
  check_pair(a, b);
  if (a.size() + b.size() > options.max_atoms) {
    throw ConfigError("exact solver size guard exceeded: " + std::to_string(a.size() + b.size()) +
                      " atoms > " + std::to_string(options.max_atoms));
  }
  const auto cost = cost_matrix(p, a, b);
  if (a.uniform() && b.uniform() && a.size() == b.size()) return solve_assignment(cost, a.size());
  return solve_transport(a.weights(), b.weights(), cost);
}

double transport_cost_p(double p, const EmpiricalMeasure& a, const EmpiricalMeasure& b,
                        const ExactOptions& options) {
  return std::max(0.0, optimal_plan(p, a, b, options).cost);
}

double w_exact_discrete(double p, const EmpiricalMeasure& a, const EmpiricalMeasure& b,
                        const ExactOptions& options) {
  return std::pow(transport_cost_p(p, a, b, options), 1.0 / p);
}

double w_exact_1d(double p, const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
  if (!(p >= 1.0)) throw ConfigError("requires p >= 1");
  if (a.dim() != 1 || b.dim() != 1) throw ConfigError("w_exact_1d requires dimension 1");
  if (a.size() != b.size()) throw ConfigError("w_exact_1d requires equal sizes");
  if (!a.uniform() || !b.uniform()) throw ConfigError("w_exact_1d requires uniform weights");
  std::vector<double> sa(a.atoms().begin(), a.atoms().end());
  std::vector<double> sb(b.atoms().begin(), b.atoms().end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double total = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) total += std::pow(std::abs(sa[i] - sb[i]), p);
  return std::pow(total / static_cast<double>(sa.size()), 1.0 / p);
}

}  // namespace depcov
