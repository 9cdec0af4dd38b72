#pragma once

#include <functional>

#include "lipmab/bandit.hpp"
#include "lipmab/trace.hpp"

namespace lipmab {

// One nested level S_i of a fat decomposition, with a membership test and a
// level covering oracle.
struct TreeFatLevel {
  std::int64_t max_entry = 1;  // leaves with all path entries < max_entry
};
struct SinglePointLevel {
  Point point;
};
struct FiniteSubsetLevel {
  std::vector<Point> points;
};

using LevelSetVariant = std::variant<TreeFatLevel, SinglePointLevel, FiniteSubsetLevel>;

struct LevelSet : LevelSetVariant {
  using LevelSetVariant::LevelSetVariant;
};

// Returns an uncovered strategy of the level set, if any.
CoverResult level_uncovered(const MetricDescriptor& m, const LevelSet& level,
                            std::span<const Ball> balls);
bool level_contains(const MetricDescriptor& m, const LevelSet& level, const Point& p);

// Nested closed sets S_0 = X ⊃ S_1 ⊃ ... ⊃ S_k ⊃ ∅; `levels` holds S_1..S_k.
struct FatDecomposition {
  std::vector<LevelSet> levels;
  double d_star = 0.0;
};

struct QuotaConfig {
  double d = 2.0;  // target dimension, must exceed d_star
  FatDecomposition decomposition;
  std::size_t net_cap = 50000;
  bool full_resolution = false;
};

struct QuotaMonitor {
  // independently recount the per-pool quotas every round
  bool check_quotas = false;
  std::uint64_t quota_checks = 0;
  std::uint64_t quota_violations = 0;
  // verify rho-separation of qualifying pool members every round
  bool check_separation = false;
  std::uint64_t separation_violations = 0;
  std::uint64_t degenerate_phases = 0;  // quota admitted no activations
  std::uint64_t pool_activations = 0;
};

// Phase algorithm per the quota scheme: an initial net capped at
// (1/2) T^(d/(d+2)) points, plus per-level pools bounded by the quota
// |{u in P_i : r_t(u) >= rho}| <= C_rho * rho^-d with rho = T^(-1/(d+2)),
// C_rho = (64 k ln(1/rho))^-1. Index and radius are the standard ones.
RunTrace run_quota(const ProblemInstance& inst, const QuotaConfig& config,
                   std::uint64_t horizon, Rng& rng, QuotaMonitor* monitor = nullptr);

// Quota cap for one phase; exposed for the accounting tests.
double quota_cap(std::uint64_t phase_len, double d, std::size_t k);

}  // namespace lipmab
