#include "CLI11.hpp"
#include "lipmab/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Lipschitz bandit simulation harness"};
  app.require_subcommand(1);

  lipmab::CliOptions opts;
  bool seed_base_set = false;
  std::uint64_t seed_base = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "experiment config file")
        ->required()
        ->envname("LIPMAB_CONFIG");
    sub->add_option("--out", opts.out_dir, "output directory override")
        ->envname("LIPMAB_OUT");
    sub->add_option("--threads", opts.threads,
                    "worker threads (affects speed only, never results)")
        ->envname("LIPMAB_THREADS");
    sub->add_option("--seed-base", seed_base, "replication seed base override")
        ->envname("LIPMAB_SEED_BASE")
        ->each([&](const std::string&) { seed_base_set = true; });
  };

  auto* run = app.add_subcommand("run", "run one experiment, write curve + summary");
  auto* sweep = app.add_subcommand("sweep", "run a one-axis config sweep");
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  auto* needle = app.add_subcommand("needle-gen", "generate a needle instance file");
  auto* dim = app.add_subcommand("dim", "estimate the zooming dimension");
  for (auto* sub : {run, sweep, verify, needle, dim}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  opts.has_seed_base = seed_base_set;
  opts.seed_base = seed_base;

  if (run->parsed()) return lipmab::cmd_run(opts);
  if (sweep->parsed()) return lipmab::cmd_sweep(opts);
  if (verify->parsed()) return lipmab::cmd_verify(opts);
  if (needle->parsed()) return lipmab::cmd_needle_gen(opts);
  if (dim->parsed()) return lipmab::cmd_dim(opts);
  return 1;
}
