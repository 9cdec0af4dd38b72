#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "lipmab/rng.hpp"

namespace lipmab {

struct BernoulliReward {};

struct GaussianNoise {
  double sigma = 0.1;
};

struct UniformNoise {
  double half_width = 0.25;
};

// Discrete zero-mean noise with at least one atom.
struct PointMassNoise {
  std::vector<std::pair<double, double>> atoms;  // (value, probability)
};

// Symmetric density ~ |x|^-alpha near 0, support [-1,1]; sampled as
// sign(Z)*|Z|^(1/(1-alpha)) for Z uniform on [-1,1].
struct SharpPeakNoise {
  double alpha = 0.5;  // in (0,1)
};

// Symmetric piecewise-constant density: 1.5 on |x| <= 1/4, 0.5 on
// 1/4 < |x| <= 1/2 (integrates to one, single jump at 1/4).
struct JumpNoise {};

// Symmetric shifted Pareto with tail index 3.5 (finite third moment, no
// exponential moments), scaled.
struct HeavyTailNoise {
  double scale = 1.0;
};

using RewardVariant = std::variant<BernoulliReward, GaussianNoise, UniformNoise,
                                   PointMassNoise, SharpPeakNoise, JumpNoise,
                                   HeavyTailNoise>;

struct RewardModel : RewardVariant {
  using RewardVariant::RewardVariant;
};

void validate_reward(const RewardModel& r);

// Sample with mean `mu`; Bernoulli requires mu in [0,1], noise models add a
// zero-mean draw and do not clip.
double sample_reward(const RewardModel& r, double mu, Rng& rng);

double noise_variance(const RewardModel& r);

// Analytic bound on E|X|^3 of the noise (heavy-tail rho); infinity is never
// returned for the supported variants.
double noise_third_moment(const RewardModel& r);

bool reward_is_noiseless(const RewardModel& r);

}  // namespace lipmab
