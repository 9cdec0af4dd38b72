#pragma once

#include "lipmab/naive.hpp"
#include "lipmab/quota.hpp"
#include "lipmab/trace.hpp"
#include "lipmab/zooming.hpp"

namespace lipmab {

using AlgorithmVariant = std::variant<Ucb1Config, NaiveConfig, ZoomingConfig, QuotaConfig>;

struct AlgorithmConfig : AlgorithmVariant {
  using AlgorithmVariant::AlgorithmVariant;
};

const char* algorithm_name(const AlgorithmConfig& algo);

// Deterministic given (inst, algo, horizon, seed).
RunTrace run_experiment(const ProblemInstance& inst, const AlgorithmConfig& algo,
                        std::uint64_t horizon, std::uint64_t seed);

// Replications across seeds. threads <= 1 runs the serial reference loop;
// larger values run the OpenMP kernel. Aggregation is a serial reduce in
// seed order, so results do not depend on the thread count.
RegretCurve replicate(const ProblemInstance& inst, const AlgorithmConfig& algo,
                      std::uint64_t horizon, std::span<const std::uint64_t> seeds,
                      int threads = 1);

// Same engine, returning the per-seed traces in seed order.
std::vector<RunTrace> replicate_traces(const ProblemInstance& inst,
                                       const AlgorithmConfig& algo,
                                       std::uint64_t horizon,
                                       std::span<const std::uint64_t> seeds,
                                       int threads = 1);

RegretCurve aggregate_traces(std::span<const RunTrace> traces);

std::vector<std::uint64_t> make_seed_list(std::uint64_t base, std::size_t count);

// ---- clean-phase invariant monitors ------------------------------------

struct CleanReport {
  std::uint64_t phases = 0;
  std::uint64_t non_clean_phases = 0;
  // violations counted within clean phases only
  std::uint64_t optimality_gap_violations = 0;  // Delta(v) <= 4 r_t(v)
  std::uint64_t separation_violations = 0;      // L(u,v) > min(Delta_u, Delta_v)/4
  double non_clean_fraction() const {
    return phases ? static_cast<double>(non_clean_phases) / static_cast<double>(phases)
                  : 0.0;
  }
};

// Replays `n_phases` independent phases of 2^i_ph rounds with fresh state and
// checks the clean-phase definition plus its two consequences against the
// true payoffs. Deterministic given base_seed.
CleanReport monitor_clean_invariants(const ProblemInstance& inst, const RadiusRule& rule,
                                     int i_ph, std::size_t n_phases,
                                     std::uint64_t base_seed, int threads = 1);

}  // namespace lipmab
