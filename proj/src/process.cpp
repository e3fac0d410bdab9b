#include "depcov/process.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>

#include "depcov/errors.hpp"

namespace depcov {

namespace {

constexpr double kRootTolerance = 1e-8;

double draw(const Innovation& e, Rng& rng) {
  if (e.kind == Innovation::Kind::gaussian) {
    return std::normal_distribution<double>(0.0, e.sigma)(rng);
  }
  return std::uniform_real_distribution<double>(e.lower, e.upper)(rng);
}

std::string format_root(std::complex<double> z) {
  std::ostringstream os;
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

std::size_t ArmaSpec::effective_burn_in() const {
  return burn_in.value_or(10 * (ar.size() + ma.size() + 1) + 100);
}

std::vector<std::complex<double>> polynomial_roots(std::span<const double> coefficients) {
  std::size_t degree = coefficients.size();
  while (degree > 0 && coefficients[degree - 1] == 0.0) --degree;
  if (degree <= 1) return {};
  const std::size_t m = degree - 1;
  const double lead = coefficients[m];
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                                    static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    companion(0, static_cast<Eigen::Index>(i)) = -coefficients[m - 1 - i] / lead;
  }
  for (std::size_t i = 1; i < m; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  const auto values = solver.eigenvalues();
  std::vector<std::complex<double>> roots(values.data(), values.data() + values.size());
  return roots;
}

ArmaCheck validate_arma(const ArmaSpec& spec) {
  ArmaCheck check;
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double c) { return std::isfinite(c); });
  };
  if (!finite(spec.ar) || !finite(spec.ma)) {
    check.errors.emplace_back("coefficients must be finite");
    return check;
  }
  const auto& e = spec.innovation;
  if (e.kind == Innovation::Kind::gaussian && !(e.sigma > 0.0 && std::isfinite(e.sigma))) {
    check.errors.emplace_back("gaussian innovation requires sigma > 0");
  }
  if (e.kind == Innovation::Kind::uniform &&
      !(e.lower < e.upper && std::isfinite(e.lower) && std::isfinite(e.upper))) {
    check.errors.emplace_back("uniform innovation requires lower < upper");
  }

  std::vector<double> phi{1.0};
  for (double c : spec.ar) phi.push_back(-c);
  std::vector<double> psi{1.0};
  for (double c : spec.ma) psi.push_back(c);
  check.ar_roots = polynomial_roots(phi);
  check.ma_roots = polynomial_roots(psi);

  for (const auto& z : check.ar_roots) {
    if (std::abs(z) <= 1.0 + kRootTolerance) {
      check.errors.push_back("AR polynomial has a root inside or on the unit circle at " +
                             format_root(z) + " (requires |root| > 1)");
    }
  }
  for (const auto& za : check.ar_roots) {
    for (const auto& zm : check.ma_roots) {
      if (std::abs(za - zm) < kRootTolerance) {
        check.errors.push_back("AR and MA polynomials share a common root at " +
                               format_root(za));
      }
    }
  }
  return check;
}

void require_valid(const ArmaSpec& spec) {
  const auto check = validate_arma(spec);
  if (check.valid()) return;
  std::string message = "invalid ARMA spec: ";
  for (std::size_t i = 0; i < check.errors.size(); ++i) {
    if (i > 0) message += "; ";
    message += check.errors[i];
  }
  throw ConfigError(message);
}

std::vector<double> simulate_arma(const ArmaSpec& spec, std::size_t n, std::uint64_t seed) {
  require_valid(spec);
  const std::size_t burn = spec.effective_burn_in();
  const std::size_t total = burn + n;
  const std::size_t p = spec.ar.size();
  const std::size_t q = spec.ma.size();
  auto rng = make_rng(seed);
  std::vector<double> u(total, 0.0);
  std::vector<double> eps(total, 0.0);
  for (std::size_t k = 0; k < total; ++k) {
    eps[k] = draw(spec.innovation, rng);
    double value = eps[k];
    for (std::size_t i = 0; i < p && i < k; ++i) value += spec.ar[i] * u[k - 1 - i];
    for (std::size_t i = 0; i < q && i < k; ++i) value += spec.ma[i] * eps[k - 1 - i];
    u[k] = value;
  }
  return {u.begin() + static_cast<std::ptrdiff_t>(burn), u.end()};
}

std::string to_string(Scenario::Kind kind) {
  switch (kind) {
    case Scenario::Kind::independent_pair: return "independent_pair";
    case Scenario::Kind::linear_dependent: return "linear_dependent";
    case Scenario::Kind::cross_lag: return "cross_lag";
    case Scenario::Kind::common_factor: return "common_factor";
  }
  return "unknown";
}

Scenario::Kind scenario_kind_from_string(const std::string& name) {
  for (auto kind : {Scenario::Kind::independent_pair, Scenario::Kind::linear_dependent,
                    Scenario::Kind::cross_lag, Scenario::Kind::common_factor}) {
    if (to_string(kind) == name) return kind;
  }
  throw ConfigError("unknown scenario '" + name +
                    "' (expected independent_pair, linear_dependent, cross_lag, common_factor)");
}

PairedSample make_scenario_sample(const Scenario& sc, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ConfigError("requires n >= 1");
  const auto x_seed = substream_seed(seed, 0);
  const auto y_seed = substream_seed(seed, 1);
  const auto f_seed = substream_seed(seed, 2);
  switch (sc.kind) {
    case Scenario::Kind::independent_pair:
      return PairedSample::univariate(simulate_arma(sc.x_process, n, x_seed),
                                      simulate_arma(sc.y_process, n, y_seed));
    case Scenario::Kind::linear_dependent: {
      auto x = simulate_arma(sc.x_process, n, x_seed);
      auto y = simulate_arma(sc.y_process, n, y_seed);
      for (std::size_t k = 0; k < n; ++k) y[k] += sc.kappa * x[k];
      return PairedSample::univariate(std::move(x), std::move(y));
    }
    case Scenario::Kind::cross_lag: {
      if (!sc.x_process.ar.empty() || !sc.x_process.ma.empty()) {
        throw ConfigError("cross_lag requires an iid x_process (no AR/MA terms)");
      }
      const auto u = simulate_arma(sc.x_process, n + 1, x_seed);
      std::vector<double> x(u.begin() + 1, u.end());
      std::vector<double> y(u.begin(), u.end() - 1);
      return PairedSample::univariate(std::move(x), std::move(y));
    }
    case Scenario::Kind::common_factor: {
      auto x = simulate_arma(sc.x_process, n, x_seed);
      auto y = simulate_arma(sc.y_process, n, y_seed);
      const auto f = simulate_arma(sc.factor_process, n, f_seed);
      for (std::size_t k = 0; k < n; ++k) {
        x[k] += sc.kappa * f[k];
        y[k] += sc.kappa * f[k];
      }
      return PairedSample::univariate(std::move(x), std::move(y));
    }
  }
  throw ConfigError("unknown scenario kind");
}

ExperimentReport size_power_experiment(const Scenario& sc, std::size_t n, std::size_t reps,
                                       const BootstrapConfig& cfg, std::uint64_t seed) {
  if (reps < 1) throw ConfigError("requires reps >= 1");
  cfg.validate();
  require_valid(sc.x_process);
  require_valid(sc.y_process);
  const auto start = std::chrono::steady_clock::now();

  ExperimentReport report;
  report.scenario = sc;
  report.n = n;
  report.reps = reps;
  report.config = cfg;
  report.seed = seed;
  std::vector<BootstrapOutcome> outcomes(reps);
  std::vector<std::exception_ptr> failures(reps);

  const auto count = static_cast<std::ptrdiff_t>(reps);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t r = 0; r < count; ++r) {
    try {
      const auto rep_seed = substream_seed(seed, static_cast<std::uint64_t>(r));
      const auto sample = make_scenario_sample(sc, n, substream_seed(rep_seed, 0));
      BootstrapConfig local = cfg;
      local.base_seed = substream_seed(rep_seed, 1);
      outcomes[r] = independence_test(sample, local);
    } catch (...) {
      failures[r] = std::current_exception();
    }
  }
  // Report the lowest failing repetition so the error does not depend on scheduling.
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  double rejected = 0.0;
  double stat_sum = 0.0;
  for (const auto& o : outcomes) {
    report.statistics.push_back(o.statistic);
    report.p_values.push_back(o.p_value);
    report.quantiles.push_back(o.quantile);
    report.rejections.push_back(o.reject);
    rejected += o.reject ? 1.0 : 0.0;
    stat_sum += o.statistic;
  }
  report.rejection_rate = rejected / static_cast<double>(reps);
  report.mean_stat = stat_sum / static_cast<double>(reps);
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

PairedSample block_array_segment(const ArmaSpec& x, const ArmaSpec& y, std::size_t d,
                                 std::uint64_t seed, std::size_t k) {
  if (d == 0) throw ConfigError("requires block length d >= 1");
  return PairedSample::univariate(simulate_arma(x, d, substream_seed(substream_seed(seed, 0), k)),
                                  simulate_arma(y, d, substream_seed(substream_seed(seed, 1), k)));
}

PairedSample block_array_sample(const ArmaSpec& x, const ArmaSpec& y, std::size_t n,
                                std::size_t d, std::uint64_t seed) {
  if (d == 0 || d > n) throw ConfigError("requires 1 <= d <= n");
  require_valid(x);
  require_valid(y);
  const std::size_t blocks = n / d;
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(blocks * d);
  ys.reserve(blocks * d);
  for (std::size_t k = 0; k < blocks; ++k) {
    const auto segment = block_array_segment(x, y, d, seed, k);
    xs.insert(xs.end(), segment.x_data().begin(), segment.x_data().end());
    ys.insert(ys.end(), segment.y_data().begin(), segment.y_data().end());
  }
  return PairedSample::univariate(std::move(xs), std::move(ys));
}

double compare_distributions(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ConfigError("compare_distributions needs two non-empty samples");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double sup = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double t = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] <= t) ++i;
    while (j < sb.size() && sb[j] <= t) ++j;
    sup = std::max(sup, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return sup;
}

double ks_critical_value(std::size_t na, std::size_t nb, double level) {
  if (na == 0 || nb == 0) throw ConfigError("sample sizes must be positive");
  if (!(level > 0.0 && level < 1.0)) throw ConfigError("requires 0 < level < 1");
  const double c = std::sqrt(-std::log(level / 2.0) / 2.0);
  const double a = static_cast<double>(na);
  const double b = static_cast<double>(nb);
  return c * std::sqrt((a + b) / (a * b));
}

}  // namespace depcov
