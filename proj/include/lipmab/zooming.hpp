#pragma once

#include <functional>

#include "lipmab/bandit.hpp"
#include "lipmab/trace.hpp"

namespace lipmab {

struct ZoomingConfig {
  RadiusRule rule = StandardRule{};
  bool full_resolution = false;
  std::size_t activation_cap = 1u << 20;
};

// Observation hooks for the invariant monitors; all optional. The monitors
// get oracle access to the true payoffs, a simulation-only privilege.
struct ZoomingMonitor {
  // re-query the covering oracle after the activation step each round
  bool check_coverage = false;
  std::uint64_t coverage_checks = 0;
  std::uint64_t coverage_failures = 0;

  // called after the played arm's statistics were updated
  std::function<void(int i_ph, std::uint64_t t_in_phase, std::span<const ArmRecord>,
                     std::size_t played)>
      on_played;
  // called when a phase completes (or the horizon truncates it)
  std::function<void(int i_ph, std::span<const ArmRecord>)> on_phase_end;
};

// Algorithm: phases i = 1,2,... of 2^i rounds, fresh state per phase; each
// round activates an uncovered strategy if one exists, then plays the active
// strategy with the maximal index.
RunTrace run_zooming(const ProblemInstance& inst, const ZoomingConfig& config,
                     std::uint64_t horizon, Rng& rng, ZoomingMonitor* monitor = nullptr);

// Single phase with a pinned phase ordinal and length; used by the
// clean-phase monitors.
void run_zooming_phase(const ProblemInstance& inst, const ZoomingConfig& config,
                       int i_ph, std::uint64_t rounds, Rng& rng,
                       TraceRecorder* recorder, std::uint64_t round_offset,
                       ZoomingMonitor* monitor);

}  // namespace lipmab
