#include "depcov/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include "depcov/errors.hpp"
#include "depcov/seeding.hpp"

namespace depcov {

namespace {

constexpr int kMaxDyadicLevel = 50;

using CellKey = std::vector<std::uint64_t>;

struct CellMass {
  double eta = 0.0;
  double xi = 0.0;
  // Index of the first rescaled point seen in this cell and whether a
  // different point was seen too.
  const double* point = nullptr;
  bool mixed = false;
};

std::vector<double> rescale(const EmpiricalMeasure& mu, const DyadicPartitionParams& params,
                            const char* which) {
  std::vector<double> out(mu.atoms().begin(), mu.atoms().end());
  const double nudge = 1.0 - 1e-12;
  for (double& c : out) {
    c = (c - params.lower) / params.side;
    if (!(c >= 0.0 && c <= 1.0)) {
      throw ConfigError(std::string("support violation: ") + which +
                        " has an atom outside the declared cube");
    }
    if (c >= nudge) c = nudge;
  }
  return out;
}

CellKey key_at(std::span<const double> u, int level) {
  const double scale = std::ldexp(1.0, level);
  CellKey key(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    key[i] = static_cast<std::uint64_t>(std::floor(u[i] * scale));
  }
  return key;
}

CellKey parent_of(const CellKey& child) {
  CellKey parent(child);
  for (auto& c : parent) c >>= 1;
  return parent;
}

void add_point(std::map<CellKey, CellMass>& cells, const CellKey& key, const double* point,
               std::size_t dim, double w, bool is_eta) {
  auto& cell = cells[key];
  (is_eta ? cell.eta : cell.xi) += w;
  if (cell.point == nullptr) {
    cell.point = point;
  } else if (!cell.mixed && !std::equal(point, point + dim, cell.point)) {
    cell.mixed = true;
  }
}

}  // namespace

double unit_cube_diameter(std::size_t m) { return std::sqrt(static_cast<double>(m)); }

double dyadic_bound(double p, const EmpiricalMeasure& eta, const EmpiricalMeasure& xi,
                    const DyadicPartitionParams& params) {
  if (!(p >= 1.0)) throw ConfigError("requires p >= 1");
  if (eta.dim() != xi.dim()) throw ConfigError("measures differ in dimension");
  if (params.max_level < 0 || params.max_level > kMaxDyadicLevel) {
    throw ConfigError("requires 0 <= max_level <= " + std::to_string(kMaxDyadicLevel));
  }
  if (!(params.side > 0.0)) throw ConfigError("requires cube side > 0");
  const std::size_t m = eta.dim();
  const auto ue = rescale(eta, params, "eta");
  const auto ux = rescale(xi, params, "xi");
  const double diam_p = std::pow(unit_cube_diameter(m), p);

  double weighted_sum = 0.0;
  bool resolved = false;
  for (int level = 0; level <= params.max_level; ++level) {
    std::map<CellKey, CellMass> children;
    for (std::size_t i = 0; i < eta.size(); ++i) {
      const std::span<const double> u(ue.data() + i * m, m);
      add_point(children, key_at(u, level + 1), u.data(), m, eta.weight(i), true);
    }
    for (std::size_t i = 0; i < xi.size(); ++i) {
      const std::span<const double> u(ux.data() + i * m, m);
      add_point(children, key_at(u, level + 1), u.data(), m, xi.weight(i), false);
    }
    std::map<CellKey, CellMass> parents;
    for (const auto& [key, cell] : children) {
      if (cell.xi > 0.0 && cell.eta == 0.0) {
        throw ConfigError("lemma precondition violated: eta(C) = 0 < xi(C) at level " +
                          std::to_string(level + 1));
      }
      auto& parent = parents[parent_of(key)];
      parent.eta += cell.eta;
      parent.xi += cell.xi;
      parent.mixed = parent.mixed || cell.mixed || parent.point != nullptr;
      parent.point = cell.point;
    }
    // A cell holding a single point has one occupied child carrying all of
    // its mass, so its term and every deeper term vanish.
    const bool all_single = std::none_of(parents.begin(), parents.end(),
                                         [](const auto& kv) { return kv.second.mixed; });
    if (all_single) {
      resolved = true;
      break;
    }
    double level_sum = 0.0;
    for (const auto& [key, cell] : children) {
      const auto& parent = parents.at(parent_of(key));
      if (parent.eta == 0.0) continue;
      const double ratio = parent.xi / parent.eta;
      level_sum += std::abs(cell.xi - cell.eta * ratio);
    }
    weighted_sum += std::pow(2.0, -p * level) * level_sum;
  }
  double bound = 0.5 * diam_p * weighted_sum;
  if (!resolved) {
    bound += diam_p * std::pow(2.0, -p * params.max_level) / (std::pow(2.0, p) - 1.0);
  }
  return bound * std::pow(params.side, p);
}

double zeta_fn(double t) {
  if (!(t >= 0.0)) throw ConfigError("zeta requires t >= 0");
  return std::min(std::sqrt(t), t);
}

double zeta_nr(double cell_mass, std::size_t n, double r, double c0) {
  if (!(cell_mass >= 0.0 && cell_mass <= 1.0)) throw ConfigError("requires 0 <= xi(C) <= 1");
  if (n < 1) throw ConfigError("requires n >= 1");
  if (!(r > 1.0)) throw ConfigError("requires r > 1");
  if (!(c0 >= 2.0)) throw ConfigError("requires c0 >= 2");
  const double nn = static_cast<double>(n);
  const double mass = nn * cell_mass;
  if (cell_mass <= 1.0 / nn) return c0 * zeta_fn(mass);
  if (cell_mass <= 1.0 / std::sqrt(nn)) {
    return c0 * std::pow(nn, 0.5 - 1.0 / (2.0 * r)) * std::pow(mass, 1.0 / r);
  }
  return c0 * std::pow(nn, 0.25) * zeta_fn(mass);
}

double entropy_level_cap(double n, double r, std::size_t d, double M, double side) {
  if (!(n > 0.0) || !(r > 0.0) || d == 0 || !(M > 0.0) || !(side > 0.0)) {
    throw ConfigError("entropy_level_cap requires positive inputs");
  }
  const double dd = static_cast<double>(d);
  return std::log2(2.0 * side * std::pow(M, 1.0 / dd) * std::pow(n, r / dd));
}

double riemann_zeta(double s) {
  if (!(s > 1.0)) throw ConfigError("riemann_zeta requires s > 1");
  return std::riemann_zeta(s);
}

double mixing_constant_c0(double c, double r0) {
  if (!(c >= 0.0)) throw ConfigError("requires mixing prefactor c >= 0");
  return std::max(1.0 + 64.0 * c * riemann_zeta(r0), 2.0 + 1e-9);
}

VarianceCheck variance_bound_check(const PathSampler& sampler, const MixingRate& rate,
                                   const Cell& cell, std::size_t n, double t0, std::size_t reps,
                                   std::uint64_t seed, std::size_t presample) {
  if (n == 0 || reps < 2 || presample == 0) {
    throw ConfigError("requires n >= 1, reps >= 2 and a non-empty presample");
  }
  if (!(t0 > 0.0)) throw ConfigError("requires t0 > 0");
  VarianceCheck out;
  out.c0 = mixing_constant_c0(rate.c, rate.r0);

  const auto pre = sampler(presample, substream_seed(seed, 0));
  const auto inside = std::count_if(pre.begin(), pre.end(),
                                    [&](double u) { return cell.contains(u); });
  out.cell_mass = static_cast<double>(inside) / static_cast<double>(pre.size());
  if (out.cell_mass < t0) {
    throw ConfigError("t0 violated: requires xi(F) >= t0 (estimated xi(F) = " +
                      std::to_string(out.cell_mass) + ")");
  }

  std::vector<double> counts(reps);
  const auto count = static_cast<std::ptrdiff_t>(reps);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t r = 0; r < count; ++r) {
    const auto path = sampler(n, substream_seed(seed, static_cast<std::uint64_t>(r) + 1));
    counts[r] = static_cast<double>(
        std::count_if(path.begin(), path.end(), [&](double u) { return cell.contains(u); }));
  }
  double mean = 0.0;
  for (double c : counts) mean += c;
  mean /= static_cast<double>(reps);
  double ss = 0.0;
  for (double c : counts) ss += (c - mean) * (c - mean);
  out.empirical_var = ss / static_cast<double>(reps - 1);
  out.bound = out.c0 * static_cast<double>(n) * out.cell_mass / t0;
  out.pass = out.empirical_var <= out.bound;
  return out;
}

SubadditivityCheck product_subadditivity_check(double p, const EmpiricalMeasure& eta1,
                                               const EmpiricalMeasure& xi1,
                                               const EmpiricalMeasure& eta2,
                                               const EmpiricalMeasure& xi2) {
  for (const auto* mu : {&eta1, &xi1, &eta2, &xi2}) {
    if (mu->size() > 12) throw ConfigError("size guard: at most 12 atoms per measure");
  }
  SubadditivityCheck out;
  const auto left = EmpiricalMeasure::product(eta1, eta2);
  const auto right = EmpiricalMeasure::product(xi1, xi2);
  out.lhs = transport_cost_p(p, left, right);
  out.rhs = std::max(1.0, std::pow(2.0, p / 2.0 - 1.0)) *
            (transport_cost_p(p, eta1, xi1) + transport_cost_p(p, eta2, xi2));
  out.pass = out.lhs <= out.rhs * (1.0 + 1e-9) + 1e-12;
  return out;
}

SubadditivityCheck random_product_subadditivity_trial(double p, std::uint64_t seed) {
  auto rng = make_rng(seed);
  std::uniform_int_distribution<std::size_t> atoms(1, 12);
  std::uniform_int_distribution<std::size_t> dims(1, 2);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::exponential_distribution<double> gamma1(1.0);
  std::bernoulli_distribution uniform_weights(0.5);
  auto random_measure = [&](std::size_t dim) {
    const std::size_t k = atoms(rng);
    std::vector<double> pts(k * dim);
    for (double& c : pts) c = coord(rng);
    if (uniform_weights(rng)) return EmpiricalMeasure(dim, std::move(pts));
    std::vector<double> w(k);
    double total = 0.0;
    for (double& x : w) total += (x = gamma1(rng) + 1e-3);
    for (double& x : w) x /= total;
    return EmpiricalMeasure(dim, std::move(pts), std::move(w));
  };
  const std::size_t d1 = dims(rng);
  const std::size_t d2 = dims(rng);
  const auto eta1 = random_measure(d1);
  const auto xi1 = random_measure(d1);
  const auto eta2 = random_measure(d2);
  const auto xi2 = random_measure(d2);
  return product_subadditivity_check(p, eta1, xi1, eta2, xi2);
}

}  // namespace depcov
