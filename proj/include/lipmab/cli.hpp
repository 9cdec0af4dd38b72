#pragma once

#include <string>

#include "lipmab/config.hpp"

namespace lipmab {

struct CliOptions {
  std::string config_path;
  std::string out_dir;          // overrides [output] dir when nonempty
  std::uint64_t seed_base = 0;  // overrides [run] seed_base when has_seed_base
  bool has_seed_base = false;
  int threads = 0;  // 0: library default (all hardware threads)
};

// Exit codes: 0 success, 1 runtime error, 2 invalid config, 3 verification
// failure. Wall-clock timings go to stdout only; output files are
// byte-deterministic for a fixed config.
int cmd_run(const CliOptions& opts);
int cmd_sweep(const CliOptions& opts);
int cmd_verify(const CliOptions& opts);
int cmd_needle_gen(const CliOptions& opts);
int cmd_dim(const CliOptions& opts);

}  // namespace lipmab
