#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>

#include "depcov/bootstrap.hpp"
#include "depcov/bounds.hpp"
#include "depcov/errors.hpp"
#include "depcov/parallel.hpp"
#include "depcov/process.hpp"
#include "depcov/selftest.hpp"
#include "depcov/series.hpp"
#include "depcov/wasserstein.hpp"

namespace depcov::cli {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json versions() {
  return {{"depcov", DEPCOV_VERSION},
          {"compiler", __VERSION__},
          {"openmp", _OPENMP},
          {"cli11", CLI11_VERSION},
          {"json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                       std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                       std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

const std::vector<std::string>& test_assumptions() {
  static const std::vector<std::string> list = {
      "the paired sequence is strictly stationary",
      "the sequence is absolutely regular with beta(n) = O(n^-r) for some r > 18 (not checked)",
      "X and Y have finite (4 + delta)-th moments for some delta > 0 (not checked)",
      "block length d grows like log(n)^gamma with 0 < gamma < 1/2"};
  return list;
}

struct Report {
  std::string command;
  std::vector<std::string> argv;
  json config = json::object();
  json seed = nullptr;
  json result = json::object();
  std::vector<std::string> assumptions;
  Clock::time_point start = Clock::now();

  void print(std::ostream& out) const {
    const std::chrono::duration<double> elapsed = Clock::now() - start;
    json j = {{"schema", kReportSchema},
              {"command", command},
              {"argv", argv},
              {"config", config},
              {"seed", seed},
              {"result", result},
              {"assumptions", assumptions},
              {"versions", versions()},
              {"wall_time_s", elapsed.count()}};
    out << j.dump(2) << '\n';
  }
};

struct BootstrapFlags {
  std::optional<double> gamma;
  std::optional<std::size_t> block_len;
  std::size_t replicates = 200;
  double alpha = 0.05;
  std::size_t vectorize = 1;

  void add(CLI::App* cmd, const char* replicates_flag) {
    auto* g = cmd->add_option("--gamma", gamma, "block length exponent, d = floor(ln(n)^gamma)");
    auto* d = cmd->add_option("--block-len", block_len, "explicit block length")
                  ->check(CLI::PositiveNumber);
    g->excludes(d);
    cmd->add_option(replicates_flag, replicates, "bootstrap replicates B")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--alpha", alpha, "test level")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--vectorize", vectorize, "group J consecutive observations")
        ->check(CLI::PositiveNumber);
  }

  BootstrapConfig config(std::uint64_t seed) const {
    BootstrapConfig cfg;
    if (gamma) cfg.gamma = *gamma;
    cfg.block_len = block_len;
    cfg.replicates = replicates;
    cfg.alpha = alpha;
    cfg.base_seed = seed;
    cfg.vectorize_stride = vectorize;
    cfg.validate();
    return cfg;
  }
};

json config_json(const BootstrapConfig& cfg) {
  return {{"gamma", cfg.gamma},
          {"block_len", optional_json(cfg.block_len)},
          {"replicates", cfg.replicates},
          {"alpha", cfg.alpha},
          {"vectorize", cfg.vectorize_stride}};
}

json outcome_json(const BootstrapOutcome& o) {
  return {{"statistic", o.statistic},
          {"quantile", o.quantile},
          {"p_value", o.p_value},
          {"reject", o.reject},
          {"block_len", o.block_len},
          {"block_count", o.block_count},
          {"n_used", o.n_used},
          {"discarded_tail", o.discarded_tail},
          {"replicate_stats", o.replicate_stats}};
}

// test ------------------------------------------------------------------

struct TestFlags {
  std::string input;
  std::size_t xdim = 1;
  std::size_t ydim = 1;
  std::uint64_t seed = 0;
  BootstrapFlags boot;
};

int cmd_test(const TestFlags& f, Report& report, std::ostream& out) {
  const auto cfg = f.boot.config(f.seed);
  report.config = config_json(cfg);
  report.config["input"] = f.input;
  report.config["xdim"] = f.xdim;
  report.config["ydim"] = f.ydim;
  report.seed = f.seed;
  report.assumptions = test_assumptions();

  const auto sample = load_csv(f.input, f.xdim, f.ydim);
  const auto outcome = independence_test(sample, cfg);
  report.result = outcome_json(outcome);
  report.result["n_input"] = sample.size();
  report.print(out);
  return outcome.reject ? reject : accept;
}

// simulate --------------------------------------------------------------

struct SimulateFlags {
  std::string scenario;
  std::size_t n = 512;
  std::size_t reps = 100;
  double kappa = 1.0;
  double phi_x = 0.0;
  double phi_y = 0.0;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  bool compare_vectorize = false;
  std::optional<std::string> emit_stats;
  BootstrapFlags boot;
};

ArmaSpec ar_or_iid(double phi, double sigma) {
  ArmaSpec spec = phi == 0.0 ? ArmaSpec::iid(Innovation::gaussian(sigma)) : ArmaSpec::ar1(phi, sigma);
  require_valid(spec);
  return spec;
}

json experiment_json(const ExperimentReport& r) {
  return {{"rejection_rate", r.rejection_rate},
          {"mean_stat", r.mean_stat},
          {"reps", r.reps},
          {"n", r.n},
          {"statistics", r.statistics},
          {"p_values", r.p_values},
          {"quantiles", r.quantiles},
          {"rejections", r.rejections}};
}

void write_stats(std::ostream& csv, const ExperimentReport& r) {
  for (std::size_t i = 0; i < r.reps; ++i) {
    csv << r.config.vectorize_stride << ',' << i << ',' << r.statistics[i] << ',' << r.quantiles[i]
        << ',' << r.p_values[i] << ',' << (r.rejections[i] ? 1 : 0) << '\n';
  }
}

int cmd_simulate(const SimulateFlags& f, Report& report, std::ostream& out) {
  Scenario sc;
  sc.kind = scenario_kind_from_string(f.scenario);
  sc.kappa = f.kappa;
  sc.x_process = ar_or_iid(f.phi_x, f.sigma);
  sc.y_process = ar_or_iid(f.phi_y, f.sigma);
  const auto cfg = f.boot.config(f.seed);

  report.config = config_json(cfg);
  report.config["scenario"] = to_string(sc.kind);
  report.config["n"] = f.n;
  report.config["reps"] = f.reps;
  report.config["kappa"] = f.kappa;
  report.config["phi_x"] = f.phi_x;
  report.config["phi_y"] = f.phi_y;
  report.config["sigma"] = f.sigma;
  report.config["compare_vectorize"] = f.compare_vectorize;
  report.seed = f.seed;
  report.assumptions = test_assumptions();

  const auto main_run = size_power_experiment(sc, f.n, f.reps, cfg, f.seed);
  report.result = experiment_json(main_run);
  std::optional<ExperimentReport> baseline;
  if (f.compare_vectorize) {
    auto base_cfg = cfg;
    base_cfg.vectorize_stride = 1;
    baseline = size_power_experiment(sc, f.n, f.reps, base_cfg, f.seed);
    report.result["comparison"] = {{"vectorize", cfg.vectorize_stride},
                                   {"rejection_rate", main_run.rejection_rate},
                                   {"baseline_vectorize", 1},
                                   {"baseline_rejection_rate", baseline->rejection_rate},
                                   {"baseline_mean_stat", baseline->mean_stat}};
  }
  if (f.emit_stats) {
    std::ofstream csv(*f.emit_stats);
    if (!csv) throw DataError("cannot write " + *f.emit_stats);
    csv << std::setprecision(17);
    csv << "vectorize,rep,statistic,quantile,p_value,reject\n";
    write_stats(csv, main_run);
    if (baseline) write_stats(csv, *baseline);
  }
  report.print(out);
  return accept;
}

// wbound ----------------------------------------------------------------

struct WboundFlags {
  std::string variant = "alpha";
  double p = 1.0;
  double q = 2.0;
  std::size_t d = 4;
  double n = 1.0;
  double K = 1.0;
  double M = 1.0;
  std::optional<double> c0;
  double mixing_c = 1.0;
  double r0 = 2.0;
  double m_q = 1.0;
  std::optional<double> tail_prob;
  std::size_t d_prime = 1;
  double m_q_prime = 1.0;
  double c_prime = 1.0;
  std::optional<double> diam;
};

int cmd_wbound(const WboundFlags& f, Report& report, std::ostream& out) {
  const bool c0_given = f.c0.has_value();
  const double c0 = c0_given ? *f.c0 : mixing_constant_c0(f.mixing_c, f.r0);
  report.config = {{"variant", f.variant}, {"p", f.p}, {"d", f.d}, {"n", f.n},
                   {"c0", c0}, {"c0_source", c0_given ? "given" : "derived"}};
  if (f.variant == "phi") {
    report.config["diam"] = optional_json(f.diam);
    report.assumptions = {"phi-mixing with summable coefficients",
                          "bounded density on the unit cube"};
    report.result = {{"bound", bound_phi_mixing(f.p, f.d, f.n, c0, f.diam)},
                     {"diam", f.diam ? *f.diam : unit_cube_diameter(f.d)}};
    report.print(out);
    return accept;
  }

  BoundParams bp;
  bp.p = f.p;
  bp.q = f.q;
  bp.d = f.d;
  bp.n = f.n;
  bp.K = f.K;
  bp.M = f.M;
  bp.c0 = c0;
  bp.r0 = f.r0;
  bp.m_q = f.m_q;
  bp.tail_prob = f.tail_prob;
  bp.d_prime = f.d_prime;
  bp.m_q_prime = f.m_q_prime;
  bp.c_prime = f.c_prime;
  report.config.update({{"q", f.q}, {"K", f.K}, {"M", f.M}, {"mixing_c", f.mixing_c},
                        {"r0", f.r0}, {"m_q", f.m_q}, {"tail_prob", optional_json(f.tail_prob)},
                        {"d_prime", f.d_prime}, {"m_q_prime", f.m_q_prime},
                        {"c_prime", f.c_prime}});
  report.assumptions = {"alpha(k) <= c k^-r0 with r0 > 1",
                        "xi(F) <= M vol(F) on every dyadic cell F",
                        "finite q-th moment with q > p"};
  if (f.variant == "alpha") {
    report.result = {{"bound", bound_alpha_mixing(bp)}, {"dyadic_rate_term", dyadic_rate_term(bp)}};
  } else if (f.variant == "stationary") {
    const auto terms = stationary_segment_terms(bp);
    report.result = {{"bound", terms.dyadic + terms.tail},
                     {"dyadic_term", terms.dyadic},
                     {"tail_term", terms.tail}};
  } else {
    throw ConfigError("unknown variant '" + f.variant + "'");
  }
  report.print(out);
  return accept;
}

// selftest --------------------------------------------------------------

int cmd_selftest(bool inject_fault, Report& report, std::ostream& out) {
  SelftestOptions opts;
  if (inject_fault) opts.perturbation = 1e-6;
  report.config = {{"inject_fault", inject_fault}};
  report.seed = opts.seed;
  const auto st = run_selftest(opts);
  json cases = json::array();
  for (const auto& c : st.cases) {
    cases.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  report.result = {{"passed", st.passed()}, {"failed", st.failed()}, {"cases", cases}};
  report.print(out);
  return st.failed() == 0 ? accept : reject;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distance-covariance independence testing for dependent data"};
  app.set_version_flag("--version", DEPCOV_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<int> threads;
  app.add_option("--threads", threads, "worker threads (default: DEPCOV_THREADS or all cores)")
      ->check(CLI::PositiveNumber);

  TestFlags tf;
  auto* test = app.add_subcommand("test", "block-bootstrap independence test on a CSV file");
  test->add_option("--input", tf.input, "CSV with xdim + ydim columns")->required();
  test->add_option("--xdim", tf.xdim, "dimension of X")->check(CLI::PositiveNumber);
  test->add_option("--ydim", tf.ydim, "dimension of Y")->check(CLI::PositiveNumber);
  test->add_option("--seed", tf.seed, "base seed");
  tf.boot.add(test, "--reps");

  SimulateFlags sf;
  auto* sim = app.add_subcommand("simulate", "size/power experiment on a simulated scenario");
  sim->add_option("--scenario", sf.scenario)
      ->required()
      ->check(CLI::IsMember({"independent_pair", "linear_dependent", "cross_lag", "common_factor"}));
  sim->add_option("--n", sf.n, "series length")->check(CLI::PositiveNumber);
  sim->add_option("--reps", sf.reps, "outer repetitions")->check(CLI::PositiveNumber);
  sim->add_option("--kappa", sf.kappa, "loading of the shared term");
  sim->add_option("--phi-x", sf.phi_x, "AR(1) coefficient of X (0 = iid)");
  sim->add_option("--phi-y", sf.phi_y, "AR(1) coefficient of Y or its noise (0 = iid)");
  sim->add_option("--sigma", sf.sigma, "innovation standard deviation")->check(CLI::PositiveNumber);
  sim->add_option("--seed", sf.seed, "base seed");
  sim->add_flag("--compare-vectorize", sf.compare_vectorize,
                "also run with --vectorize 1 and report both rejection rates");
  sim->add_option("--emit-stats", sf.emit_stats, "write per-repetition statistics as CSV");
  sf.boot.add(sim, "--boot-reps");

  WboundFlags wf;
  auto* wb = app.add_subcommand("wbound", "expected Wasserstein distance bounds");
  wb->add_option("--variant", wf.variant)->check(CLI::IsMember({"alpha", "stationary", "phi"}));
  wb->add_option("--p", wf.p);
  wb->add_option("--q", wf.q);
  wb->add_option("--d", wf.d);
  wb->add_option("--n", wf.n);
  wb->add_option("--K", wf.K, "support radius");
  wb->add_option("--M", wf.M, "density bound");
  wb->add_option("--c0", wf.c0, "mixing constant (default 1 + 64 c zeta(r0))");
  wb->add_option("--mixing-c", wf.mixing_c, "prefactor c in alpha(k) <= c k^-r0");
  wb->add_option("--r0", wf.r0);
  wb->add_option("--m-q", wf.m_q, "q-th moment");
  wb->add_option("--tail-prob", wf.tail_prob, "mass outside the ball of radius K");
  wb->add_option("--d-prime", wf.d_prime, "segment length");
  wb->add_option("--m-q-prime", wf.m_q_prime);
  wb->add_option("--c-prime", wf.c_prime);
  wb->add_option("--diam", wf.diam, "cube diameter (phi variant, default sqrt(d))");

  bool inject_fault = false;
  auto* st = app.add_subcommand("selftest", "fast invariant suite");
  st->add_flag("--inject-fault", inject_fault)->group("");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? accept : usage;
  }

  Report report;
  report.argv = args;
  try {
    set_threads(resolve_threads(threads));
    if (test->parsed()) {
      report.command = "test";
      return cmd_test(tf, report, out);
    }
    if (sim->parsed()) {
      report.command = "simulate";
      return cmd_simulate(sf, report, out);
    }
    if (wb->parsed()) {
      report.command = "wbound";
      return cmd_wbound(wf, report, out);
    }
    report.command = "selftest";
    return cmd_selftest(inject_fault, report, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return data;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return data;
  }
}

}  // namespace depcov::cli
