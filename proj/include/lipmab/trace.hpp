#pragma once

#include <cstdint>
#include <vector>

#include "lipmab/point.hpp"

namespace lipmab {

struct RoundRecord {
  std::uint64_t t = 0;
  double mu_chosen = 0.0;
  double reward = 0.0;
};

// Per-run result: cumulative pseudo-regret R(t) = t*mu_star - sum mu(chosen)
// at a geometric checkpoint grid, plus an optional full-resolution record.
struct RunTrace {
  std::uint64_t horizon = 0;
  double mu_star = 0.0;
  std::vector<std::uint64_t> checkpoint_t;
  std::vector<double> checkpoint_regret;
  double total_mu = 0.0;
  double total_reward = 0.0;
  bool quota_degenerate = false;  // quota runs: some phase admitted no activations
  std::vector<RoundRecord> rounds;  // filled only when recording full resolution
};

// Deduplicated grid {ceil(1.25^j)} capped at T, with T appended.
std::vector<std::uint64_t> checkpoint_grid(std::uint64_t horizon);

class TraceRecorder {
 public:
  TraceRecorder(std::uint64_t horizon, double mu_star, bool full_resolution);

  void record(double mu_chosen, double reward);
  RunTrace take();

 private:
  RunTrace trace_;
  std::uint64_t t_ = 0;
  std::size_t next_checkpoint_ = 0;
  bool full_ = false;
};

struct RegretCurve {
  std::vector<std::uint64_t> t;
  std::vector<double> mean;
  std::vector<double> stderr_;
  std::size_t replications = 0;
};

struct ExponentFit {
  bool defined = false;
  double gamma = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of log-residuals over the window
  double t_lo = 0.0, t_hi = 0.0;
  std::size_t window_points = 0;
};

// Least-squares slope of log mean-regret vs log t over the last
// `window_fraction` of checkpoints. Returns defined=false when the window
// contains non-positive regret.
ExponentFit fit_exponent(const RegretCurve& curve, double window_fraction = 0.5);

}  // namespace lipmab
