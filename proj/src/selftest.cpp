#include "depcov/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "depcov/bootstrap.hpp"
#include "depcov/bounds.hpp"
#include "depcov/dcov.hpp"
#include "depcov/errors.hpp"
#include "depcov/kernels.hpp"
#include "depcov/parallel.hpp"
#include "depcov/seeding.hpp"
#include "depcov/transport.hpp"
#include "depcov/wasserstein.hpp"

namespace depcov {

std::size_t SelftestReport::passed() const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [](const auto& c) { return c.pass; }));
}

std::size_t SelftestReport::failed() const { return cases.size() - passed(); }

namespace {

PairedSample random_sample(Rng& rng, std::size_t n, std::size_t lx, std::size_t ly) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(n * lx);
  std::vector<double> y(n * ly);
  for (double& v : x) v = g(rng);
  for (double& v : y) v = g(rng);
  return {lx, ly, std::move(x), std::move(y)};
}

EmpiricalMeasure random_measure(Rng& rng, std::size_t atoms, std::size_t dim, bool uniform) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> pts(atoms * dim);
  for (double& v : pts) v = u(rng);
  if (uniform) return {dim, std::move(pts)};
  std::vector<double> w(atoms);
  double total = 0.0;
  for (double& v : w) total += (v = u(rng) + 0.05);
  for (double& v : w) v /= total;
  return {dim, std::move(pts), std::move(w)};
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); }

class Runner {
 public:
  explicit Runner(SelftestReport& report) : report_(report) {}

  void check(const std::string& name, const std::function<std::string()>& body) {
    SelftestCase c{name, false, {}};
    try {
      c.detail = body();
      c.pass = c.detail.empty();
    } catch (const std::exception& e) {
      c.detail = std::string("unexpected exception: ") + e.what();
    }
    report_.cases.push_back(std::move(c));
  }

 private:
  SelftestReport& report_;
};

std::string mismatch(const char* what, double got, double want) {
  std::ostringstream os;
  os.precision(17);
  os << what << ": got " << got << ", expected " << want;
  return os.str();
}

}  // namespace

SelftestReport run_selftest(const SelftestOptions& options) {
  SelftestReport report;
  Runner run(report);
  const double eps = options.perturbation;

  run.check("dcov fast vs brute-force V-statistic", [&]() -> std::string {
    auto rng = substream(options.seed, 1);
    for (std::size_t trial = 0; trial < 20; ++trial) {
      const std::size_t n = 2 + trial % 7;
      const auto s = random_sample(rng, n, 1 + trial % 2, 1 + (trial / 2) % 2);
      const double fast = dcov_fast(s).value + eps;
      const double oracle = dcov_v_oracle(s).value;
      if (!close(fast, oracle, 1e-10)) return mismatch("dcov", fast, oracle);
    }
    return {};
  });

  run.check("block kernel sum equals dcov on retained prefix", [&]() -> std::string {
    auto rng = substream(options.seed, 2);
    const auto s = random_sample(rng, 6, 1, 1);
    const auto p = partition_blocks(s, 2);
    const std::size_t N = p.block_count();
    double total = 0.0;
    std::array<std::size_t, 6> idx{};
    for (;;) {
      std::array<Block, 6> b;
      for (std::size_t k = 0; k < 6; ++k) b[k] = block_of(p, idx[k]);
      total += block_kernel_H(b);
      std::size_t k = 0;
      while (k < 6 && ++idx[k] == N) idx[k++] = 0;
      if (k == 6) break;
    }
    const double vh = total / std::pow(static_cast<double>(N), 6);
    const double fast = dcov_blocks(p).value + eps;
    return close(fast, vh, 1e-10) ? std::string{} : mismatch("V_H", fast, vh);
  });

  run.check("serial and parallel kernels agree bitwise", [&]() -> std::string {
    auto rng = substream(options.seed, 3);
    const auto s = random_sample(rng, 97, 2, 1);
    const auto a1 = kernels::pairwise_distances_serial(s.x_data(), 2);
    const auto b1 = kernels::pairwise_distances_serial(s.y_data(), 1);
    const auto a2 = kernels::pairwise_distances(s.x_data(), 2);
    const auto b2 = kernels::pairwise_distances(s.y_data(), 1);
    if (a1.values != a2.values || b1.values != b2.values) return "distance matrices differ";
    const double c1 = kernels::centered_product_serial(a1, b1).sum;
    const double c2 = kernels::centered_product(a2, b2).sum + eps;
    return c1 == c2 ? std::string{} : mismatch("centred product", c2, c1);
  });

  run.check("bootstrap lookup path matches recomputation", [&]() -> std::string {
    auto rng = substream(options.seed, 4);
    const auto s = random_sample(rng, 40, 1, 2);
    BootstrapConfig cfg;
    cfg.replicates = 16;
    cfg.base_seed = options.seed;
    cfg.block_len = 4;
    auto fast = bootstrap_distribution(s, cfg);
    const auto slow = bootstrap_distribution_serial(s, cfg);
    fast[0] += eps;
    return fast == slow ? std::string{} : "bootstrap replicate statistics differ";
  });

  run.check("constant series give zero dcov", [&]() -> std::string {
    const auto s = PairedSample::univariate({1, 1, 1, 1, 1}, {0.3, -2, 5, 1, 0});
    const double v = dcov_fast(s).value + eps;
    return v == 0.0 ? std::string{} : mismatch("dcov", v, 0.0);
  });

  run.check("single block bootstrap is refused", []() -> std::string {
    const auto s = PairedSample::univariate({1, 2, 3, 4}, {4, 1, 3, 2});
    BootstrapConfig cfg;
    cfg.block_len = 3;
    try {
      (void)bootstrap_distribution(s, cfg);
    } catch (const DataError&) {
      return {};
    }
    return "expected a data error";
  });

  run.check("exact transport metric axioms", [&]() -> std::string {
    auto rng = substream(options.seed, 5);
    for (std::size_t trial = 0; trial < 10; ++trial) {
      const bool uniform = trial % 2 == 0;
      const auto a = random_measure(rng, 5, 2, uniform);
      const auto b = random_measure(rng, uniform ? 5 : 4, 2, uniform);
      const auto c = random_measure(rng, uniform ? 5 : 6, 2, uniform);
      const double ab = w_exact_discrete(1.0, a, b) + eps;
      const double ba = w_exact_discrete(1.0, b, a);
      if (std::abs(ab - ba) > 1e-10) return mismatch("symmetry", ab, ba);
      if (w_exact_discrete(1.0, a, a) != 0.0) return "nonzero self-distance";
      const double ac = w_exact_discrete(1.0, a, c);
      const double bc = w_exact_discrete(1.0, b, c);
      if (ac > ab + bc + 1e-10) return "triangle inequality violated";
    }
    return {};
  });

  run.check("discrete solver matches sorted coupling in one dimension", [&]() -> std::string {
    auto rng = substream(options.seed, 6);
    for (std::size_t trial = 0; trial < 10; ++trial) {
      const auto a = random_measure(rng, 7, 1, true);
      const auto b = random_measure(rng, 7, 1, true);
      const double p = 1.0 + static_cast<double>(trial % 3);
      const double exact = w_exact_discrete(p, a, b) + eps;
      const double sorted = w_exact_1d(p, a, b);
      if (std::abs(exact - sorted) > 1e-10) return mismatch("w_p", exact, sorted);
    }
    return {};
  });

  run.check("dyadic bound dominates exact cost", [&]() -> std::string {
    auto rng = substream(options.seed, 7);
    std::uniform_int_distribution<std::size_t> pick(0, 15);
    for (std::size_t trial = 0; trial < 10; ++trial) {
      const auto eta = random_measure(rng, 16, 2, true);
      std::vector<double> pts;
      for (std::size_t i = 0; i < 16; ++i) {
        const auto atom = eta.atom(pick(rng));
        pts.insert(pts.end(), atom.begin(), atom.end());
      }
      const EmpiricalMeasure xi(2, std::move(pts));
      const double bound = dyadic_bound(1.0, eta, xi, {});
      const double exact = transport_cost_p(1.0, eta, xi) + eps;
      if (exact > bound) return mismatch("bound", bound, exact);
    }
    return {};
  });

  run.check("phi-mixing bound worked example", [&]() -> std::string {
    const double v = bound_phi_mixing(1.0, 4, 16.0, 2.5, 2.0) + eps;
    return close(v, 320.0, 1e-12) ? std::string{} : mismatch("phi bound", v, 320.0);
  });

  run.check("alpha-mixing bound refuses p = d/2", []() -> std::string {
    BoundParams bp;
    bp.p = 1.0;
    bp.d = 2;
    try {
      (void)bound_alpha_mixing(bp);
    } catch (const ConfigError&) {
      return {};
    }
    return "expected a configuration error";
  });

  return report;
}

}  // namespace depcov
