#pragma once

#include <cstdint>
#include <string>

#include "lipmab/metric.hpp"
#include "lipmab/payoff.hpp"
#include "lipmab/reward.hpp"

namespace lipmab {

struct ProblemInstance {
  MetricDescriptor metric;
  PayoffDescriptor payoff;
  RewardModel rewards;
  std::uint64_t seed = 1;
};

void validate_instance(const ProblemInstance& inst);

inline double mu(const ProblemInstance& inst, const Point& u) {
  return payoff_mu(inst.metric, inst.payoff, u);
}
inline double mu_star(const ProblemInstance& inst) {
  return payoff_mu_star(inst.metric, inst.payoff);
}
inline double sample_reward(const ProblemInstance& inst, const Point& u, Rng& rng) {
  return sample_reward(inst.rewards, mu(inst, u), rng);
}

// ---- needle-in-haystack generator --------------------------------------

struct NeedleTowerSpec {
  double a = 0.2;          // lower exponent, 0 < a < b
  double b = 0.4;          // packing exponent, < min-covering dim of host
  int depth_cap = 6;
  std::uint64_t seed = 1;
};

struct needle_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Builds the randomized tower: per level, radius parent/8 (halved further if
// the packing is infeasible), n_i = ceil(r_i^-b) disjoint balls packed inside
// the parent's flat half-ball, one chosen uniformly. Throws needle_error
// naming the level when no feasible radius exists.
PayoffDescriptor generate_needle_tower(const MetricDescriptor& host,
                                       const NeedleTowerSpec& spec);

std::string needle_to_json(const NeedleTowerPayoff& needle);
NeedleTowerPayoff needle_from_json(const std::string& text);

// ---- sampled verification ----------------------------------------------

struct LipschitzReport {
  double max_violation = -std::numeric_limits<double>::infinity();
  Point worst_u, worst_v;
  std::size_t pairs = 0;
};

// max over sampled pairs of |mu(u)-mu(v)| - L(u,v); under a quasi-distance
// checks Delta(u) <= L(u, v*) against the optimal witness instead.
LipschitzReport verify_lipschitz(const ProblemInstance& inst, std::size_t n_pairs,
                                 Rng& rng);

// ---- zooming-dimension estimator ---------------------------------------

struct DimensionEstimate {
  double d_hat = 0.0;
  bool any_nonempty = false;
  std::vector<double> radii;
  std::vector<std::size_t> cover_counts;
};

// Discretized points with mu_star - mu in (lo, hi], at the given metric
// resolution (trees use Lipschitz branch-and-bound pruning).
std::vector<Point> shell_points(const ProblemInstance& inst, double lo, double hi,
                                double resolution, std::size_t cap);

// Greedy covering count of `points` by balls of radius cover_radius.
std::size_t greedy_cover_count(const MetricDescriptor& m, std::span<const Point> points,
                               double cover_radius);

// For each radius r, greedily covers the discretized shell X_r with balls of
// radius r/16 and reports the smallest d with count <= C r^-d at every r.
DimensionEstimate zooming_dimension_estimate(const ProblemInstance& inst, double C,
                                             std::span<const double> radii,
                                             double resolution_factor = 32.0,
                                             std::size_t cap = 2000000);

}  // namespace lipmab
