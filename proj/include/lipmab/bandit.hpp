#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "lipmab/instance.hpp"
#include "lipmab/radius.hpp"

namespace lipmab {

// Per-active-strategy statistics within one phase.
struct ArmRecord {
  Point strategy;
  std::uint64_t plays = 0;
  double reward_sum = 0.0;
  std::uint64_t activation_round = 0;  // global round index at activation
  double radius = std::numeric_limits<double>::infinity();
  double true_mu = 0.0;  // oracle value, used only for regret accounting/monitors

  double mean() const {
    return plays > 0 ? reward_sum / static_cast<double>(plays) : 0.0;
  }
  double index() const { return optimistic_index(mean(), radius); }
};

// Smooths the raw rule value into the confidence-radius contract
// 3/4 * r_t <= r_{t+1} <= r_t. Infinite values mark the unexplored regime
// and start the chain at the first finite raw value.
inline double smoothed_radius(double previous, double raw) {
  if (std::isinf(previous)) return raw;
  if (std::isinf(raw)) return previous;
  return std::min(previous, std::max(raw, 0.75 * previous));
}

// Argmax of the optimistic index; ties go to the earliest activation, then
// to the smaller strategy in point order.
std::size_t argmax_index(std::span<const ArmRecord> arms);

}  // namespace lipmab
