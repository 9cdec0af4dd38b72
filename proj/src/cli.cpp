#include "lipmab/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "json.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lipmab {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

int effective_threads(int requested) {
#ifdef _OPENMP
  return requested > 0 ? requested : omp_get_max_threads();
#else
  return 1;
#endif
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string curve_csv(const RegretCurve& curve) {
  std::string csv = "t,mean_regret,stderr,replications\n";
  for (std::size_t i = 0; i < curve.t.size(); ++i) {
    csv += std::to_string(curve.t[i]);
    csv += ',';
    csv += fmt17(curve.mean[i]);
    csv += ',';
    csv += fmt17(curve.stderr_[i]);
    csv += ',';
    csv += std::to_string(curve.replications);
    csv += '\n';
  }
  return csv;
}

json config_echo(const FlatConfig& cfg) {
  json echo = json::object();
  for (const auto& [key, value] : cfg.entries()) echo[key] = value.first;
  return echo;
}

json fit_json(const ExponentFit& fit) {
  json j;
  j["defined"] = fit.defined;
  j["gamma_hat"] = fit.gamma;
  j["intercept"] = fit.intercept;
  j["residual"] = fit.residual;
  j["window"] = {{"t_lo", fit.t_lo}, {"t_hi", fit.t_hi}, {"points", fit.window_points}};
  return j;
}

struct RunResult {
  RegretCurve curve;
  ExponentFit fit;
  std::vector<double> final_regrets;
};

RunResult execute(const ExperimentConfig& exp, int threads) {
  RunResult result;
  const auto seeds = make_seed_list(exp.seed_base, exp.seed_count);
  const auto traces =
      replicate_traces(exp.instance, exp.algorithm, exp.horizon, seeds, threads);
  result.curve = aggregate_traces(traces);
  result.fit = fit_exponent(result.curve, exp.fit_window_fraction);
  for (const auto& trace : traces)
    result.final_regrets.push_back(trace.checkpoint_regret.back());
  return result;
}

ExperimentConfig load_experiment(const FlatConfig& cfg, const CliOptions& opts) {
  ExperimentConfig exp = build_experiment(cfg);
  if (!opts.out_dir.empty()) exp.output_dir = opts.out_dir;
  if (opts.has_seed_base) exp.seed_base = opts.seed_base;
  return exp;
}

int guarded(const CliOptions& opts, int (*body)(const FlatConfig&, const CliOptions&)) {
  try {
    const FlatConfig cfg = FlatConfig::parse_file(opts.config_path);
    return body(cfg, opts);
  } catch (const config_error& e) {
    std::cerr << opts.config_path << ":" << e.line << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int cmd_run(const CliOptions& opts) {
  return guarded(opts, [](const FlatConfig& cfg, const CliOptions& o) -> int {
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentConfig exp = load_experiment(cfg, o);
    const RunResult result = execute(exp, effective_threads(o.threads));

    fs::create_directories(exp.output_dir);
    const fs::path base = fs::path(exp.output_dir) / exp.prefix;
    write_file(base.string() + "_curve.csv", curve_csv(result.curve));

    json summary;
    summary["schema_version"] = 1;
    summary["config"] = config_echo(cfg);
    summary["algorithm"] = algorithm_name(exp.algorithm);
    summary["horizon"] = exp.horizon;
    summary["replications"] = exp.seed_count;
    summary["fit"] = fit_json(result.fit);
    summary["per_seed_final_regret"] = result.final_regrets;
    write_file(base.string() + "_summary.json", summary.dump(2) + "\n");

    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    std::cout << "run: wrote " << base.string() << "_curve.csv ("
              << result.curve.t.size() << " checkpoints, gamma_hat="
              << (result.fit.defined ? fmt17(result.fit.gamma) : "undefined")
              << ", wall " << ms << " ms)\n";
    return 0;
  });
}

int cmd_sweep(const CliOptions& opts) {
  return guarded(opts, [](const FlatConfig& cfg, const CliOptions& o) -> int {
    const std::string axis = cfg.get_string("sweep.axis");
    const auto values = cfg.get_list("sweep.values");
    const auto t0 = std::chrono::steady_clock::now();

    json combined;
    combined["schema_version"] = 1;
    combined["axis"] = axis;
    combined["configs"] = json::array();

    fs::path base;
    for (const auto& value : values) {
      FlatConfig sub = cfg;
      sub.set(axis, value);
      const ExperimentConfig exp = load_experiment(sub, o);
      const RunResult result = execute(exp, effective_threads(o.threads));

      fs::create_directories(exp.output_dir);
      std::string tag = value;
      for (auto& ch : tag)
        if (ch == '.' || ch == '/' || ch == ' ') ch = '_';
      base = fs::path(exp.output_dir) / exp.prefix;
      write_file(base.string() + "_" + tag + "_curve.csv", curve_csv(result.curve));

      json entry;
      entry["value"] = value;
      entry["fit"] = fit_json(result.fit);
      entry["final_mean_regret"] = result.curve.mean.back();
      combined["configs"].push_back(std::move(entry));
    }
    write_file(base.string() + "_sweep_summary.json", combined.dump(2) + "\n");
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    std::cout << "sweep: " << values.size() << " configs done (wall " << ms << " ms)\n";
    return 0;
  });
}

int cmd_verify(const CliOptions& opts) {
  return guarded(opts, [](const FlatConfig& cfg, const CliOptions& o) -> int {
    const ExperimentConfig exp = load_experiment(cfg, o);
    const int threads = effective_threads(o.threads);
    std::vector<std::pair<std::string, bool>> checks;
    json details = json::object();

    // Lipschitz condition (or its quasi-distance relaxation) on samples.
    {
      const auto pairs = static_cast<std::size_t>(cfg.get_int("verify.lipschitz_pairs", 4096));
      Rng rng(exp.instance.seed + 17);
      const auto report = verify_lipschitz(exp.instance, pairs, rng);
      checks.emplace_back("lipschitz", report.max_violation <= 1e-9);
      details["lipschitz_max_violation"] = report.max_violation;
    }

    // Payoff range and optimum on samples.
    {
      Rng rng(exp.instance.seed + 29);
      const double mstar = mu_star(exp.instance);
      bool range_ok = true, opt_ok = true;
      for (int k = 0; k < 10000; ++k) {
        const Point u = sample_point(exp.instance.metric, rng);
        const double v = mu(exp.instance, u);
        if (v < 0.0 || v > 1.0) range_ok = false;
        if (v > mstar + 1e-9) opt_ok = false;
      }
      const Point witness = payoff_optimal_witness(exp.instance.metric, exp.instance.payoff);
      const double eps = payoff_witness_epsilon(exp.instance.payoff) + 1e-9;
      if (mu(exp.instance, witness) < mstar - eps) opt_ok = false;
      checks.emplace_back("payoff_range", range_ok);
      checks.emplace_back("payoff_optimum", opt_ok);
    }

    // Clean-phase suite on this instance with the standard radius.
    {
      const auto phases = static_cast<std::size_t>(cfg.get_int("verify.clean_phases", 400));
      const int i_ph = static_cast<int>(cfg.get_int("verify.clean_i_ph", 6));
      const auto rep = monitor_clean_invariants(exp.instance, StandardRule{}, i_ph,
                                                phases, exp.seed_base, threads);
      const double stderr_band =
          3.0 * std::sqrt(std::max(rep.non_clean_fraction() *
                                       (1.0 - rep.non_clean_fraction()),
                                   1.0 / static_cast<double>(phases)) /
                          static_cast<double>(phases));
      const double bound = std::pow(4.0, -i_ph) + stderr_band;
      checks.emplace_back("clean_phase_frequency", rep.non_clean_fraction() <= bound);
      checks.emplace_back("clean_phase_optimality_gap",
                          rep.optimality_gap_violations == 0);
      checks.emplace_back("clean_phase_separation", rep.separation_violations == 0);
      details["non_clean_fraction"] = rep.non_clean_fraction();
    }

    // Quota accounting when configured.
    if (const auto* quota = std::get_if<QuotaConfig>(&exp.algorithm)) {
      QuotaMonitor monitor;
      monitor.check_quotas = true;
      monitor.check_separation = true;
      Rng rng = Rng::substream(exp.instance.seed, exp.seed_base);
      run_quota(exp.instance, *quota, std::min<std::uint64_t>(exp.horizon, 4096), rng,
                &monitor);
      checks.emplace_back("quota_bound", monitor.quota_violations == 0);
      checks.emplace_back("quota_separation", monitor.separation_violations == 0);
    }

    // Chernoff-style bound, Monte Carlo over a (mu, n) grid.
    {
      bool ok = true;
      const double alpha = 10.0;
      const int trials = static_cast<int>(cfg.get_int("verify.chernoff_trials", 20000));
      for (const double mu_val : {0.01, 0.5, 0.99}) {
        for (const std::uint64_t n : {std::uint64_t{10}, std::uint64_t{100},
                                      std::uint64_t{1000}}) {
          Rng rng(exp.instance.seed + 1000 + n + static_cast<std::uint64_t>(mu_val * 100));
          int hits = 0;
          for (int trial = 0; trial < trials; ++trial) {
            double sum = 0.0;
            for (std::uint64_t j = 0; j < n; ++j) sum += rng.bernoulli(mu_val) ? 1.0 : 0.0;
            const double x = sum / static_cast<double>(n);
            const double r_x = chernoff_radius(alpha, n, x);
            if (std::fabs(x - mu_val) < r_x &&
                r_x < 3.0 * chernoff_radius(alpha, n, mu_val))
              ++hits;
          }
          if (static_cast<double>(hits) / trials < 0.99) ok = false;
        }
      }
      checks.emplace_back("chernoff_bound_mc", ok);
    }

    // Zero-mean noise (additive models only).
    if (!std::holds_alternative<BernoulliReward>(exp.instance.rewards)) {
      Rng rng(exp.instance.seed + 71);
      const int n = 100000;
      double sum = 0.0;
      for (int k = 0; k < n; ++k) sum += sample_reward(exp.instance.rewards, 0.0, rng);
      const double mean = sum / n;
      const double band = 4.0 * std::sqrt(noise_variance(exp.instance.rewards) /
                                          static_cast<double>(n));
      checks.emplace_back("noise_zero_mean", std::fabs(mean) <= band);
      details["noise_mean"] = mean;
    }

    bool all_ok = true;
    for (const auto& [name, ok] : checks) {
      std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
      if (!ok) all_ok = false;
    }
    if (!exp.output_dir.empty()) {
      fs::create_directories(exp.output_dir);
      json report;
      report["checks"] = json::object();
      for (const auto& [name, ok] : checks) report["checks"][name] = ok;
      report["details"] = details;
      write_file((fs::path(exp.output_dir) / (exp.prefix + "_verify.json")).string(),
                 report.dump(2) + "\n");
    }
    return all_ok ? 0 : 3;
  });
}

int cmd_needle_gen(const CliOptions& opts) {
  return guarded(opts, [](const FlatConfig& cfg, const CliOptions& o) -> int {
    const MetricDescriptor metric = build_metric(cfg, "metric");
    NeedleTowerSpec spec;
    spec.a = cfg.get_double("needle.a", 0.2);
    spec.b = cfg.get_double("needle.b", 0.4);
    spec.depth_cap = static_cast<int>(cfg.get_int("needle.depth_cap", 6));
    spec.seed = static_cast<std::uint64_t>(cfg.get_int("needle.seed", 1));
    const PayoffDescriptor payoff = generate_needle_tower(metric, spec);
    const auto& needle = std::get<NeedleTowerPayoff>(payoff);

    std::string out_dir = cfg.get_string("output.dir", "out");
    if (!o.out_dir.empty()) out_dir = o.out_dir;
    const std::string prefix = cfg.get_string("output.prefix", "experiment");
    fs::create_directories(out_dir);
    const fs::path path = fs::path(out_dir) / (prefix + "_needle.json");
    write_file(path.string(), needle_to_json(needle));
    std::cout << "needle-gen: " << needle.chain.size() << " levels, mu_star="
              << fmt17(needle.mu_star_exact + needle.tail_bound) << ", wrote "
              << path.string() << "\n";
    return 0;
  });
}

int cmd_dim(const CliOptions& opts) {
  return guarded(opts, [](const FlatConfig& cfg, const CliOptions& o) -> int {
    ExperimentConfig exp;
    exp.instance.metric = build_metric(cfg, "metric");
    exp.instance.payoff = build_payoff(cfg, exp.instance.metric);
    exp.instance.rewards = build_reward(cfg);

    const double C = cfg.get_double("dim.C", 16.0);
    const int lo = static_cast<int>(cfg.get_int("dim.r_min_log2", -7));
    const int hi = static_cast<int>(cfg.get_int("dim.r_max_log2", -2));
    if (lo > hi) throw config_error(cfg.line_of("dim.r_min_log2"),
                                    "dim.r_min_log2 must be <= dim.r_max_log2");
    const double factor = cfg.get_double("dim.resolution_factor", 32.0);
    std::vector<double> radii;
    for (int e = hi; e >= lo; --e) radii.push_back(std::exp2(e));

    const auto est = zooming_dimension_estimate(exp.instance, C, radii, factor);

    std::string out_dir = cfg.get_string("output.dir", "out");
    if (!o.out_dir.empty()) out_dir = o.out_dir;
    const std::string prefix = cfg.get_string("output.prefix", "experiment");
    fs::create_directories(out_dir);
    json j;
    j["C"] = C;
    j["d_hat"] = est.d_hat;
    j["any_nonempty"] = est.any_nonempty;
    j["radii"] = est.radii;
    j["cover_counts"] = est.cover_counts;
    const fs::path path = fs::path(out_dir) / (prefix + "_dim.json");
    write_file(path.string(), j.dump(2) + "\n");
    std::cout << "dim: d_hat=" << fmt17(est.d_hat) << ", wrote " << path.string()
              << "\n";
    return 0;
  });
}

}  // namespace lipmab
