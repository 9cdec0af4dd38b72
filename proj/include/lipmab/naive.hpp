#pragma once

#include "lipmab/bandit.hpp"
#include "lipmab/trace.hpp"

namespace lipmab {

struct NaiveConfig {
  double d = 1.0;  // covering-dimension parameter for the net schedule
  std::size_t net_cap = 50000;
  bool full_resolution = false;
};

// Per phase of length T_i = 2^i: builds a delta-net with delta = T_i^(-1/(d+2))
// and runs UCB1 (index mean + sqrt(2 ln t / n)) over the net points.
RunTrace run_naive(const ProblemInstance& inst, const NaiveConfig& config,
                   std::uint64_t horizon, Rng& rng);

struct Ucb1Config {
  bool full_resolution = false;
};

// UCB1 in phases of 2^i rounds over the full (finite) strategy set.
RunTrace run_ucb1_phased(const ProblemInstance& inst, const Ucb1Config& config,
                         std::uint64_t horizon, Rng& rng);

// One UCB1 phase over fixed arm points; appends to the recorder. Exposed for
// tests of the within-phase behavior.
void run_ucb1_phase(const ProblemInstance& inst, std::span<const Point> arm_points,
                    std::uint64_t rounds, Rng& rng, TraceRecorder* recorder,
                    std::vector<std::uint64_t>* pulls_out = nullptr);

}  // namespace lipmab
