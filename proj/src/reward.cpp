#include "lipmab/reward.hpp"

#include <cmath>
#include <stdexcept>

namespace lipmab {

void validate_reward(const RewardModel& r) {
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, GaussianNoise>) {
          if (!(v.sigma > 0.0)) throw std::invalid_argument("GaussianNoise: sigma > 0");
        } else if constexpr (std::is_same_v<T, UniformNoise>) {
          if (!(v.half_width > 0.0))
            throw std::invalid_argument("UniformNoise: half_width > 0");
        } else if constexpr (std::is_same_v<T, PointMassNoise>) {
          if (v.atoms.empty()) throw std::invalid_argument("PointMassNoise: no atoms");
          double psum = 0.0, mean = 0.0;
          for (const auto& [x, p] : v.atoms) {
            if (p < 0.0) throw std::invalid_argument("PointMassNoise: negative prob");
            psum += p;
            mean += x * p;
          }
          if (std::fabs(psum - 1.0) > 1e-12)
            throw std::invalid_argument("PointMassNoise: probabilities must sum to 1");
          if (std::fabs(mean) > 1e-12)
            throw std::invalid_argument("PointMassNoise: noise must have zero mean");
        } else if constexpr (std::is_same_v<T, SharpPeakNoise>) {
          if (!(v.alpha > 0.0) || !(v.alpha < 1.0))
            throw std::invalid_argument("SharpPeakNoise: alpha must be in (0,1)");
        } else if constexpr (std::is_same_v<T, HeavyTailNoise>) {
          if (!(v.scale > 0.0)) throw std::invalid_argument("HeavyTailNoise: scale > 0");
        }
      },
      r);
}

double sample_reward(const RewardModel& r, double mu, Rng& rng) {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BernoulliReward>) {
          if (mu < 0.0 || mu > 1.0)
            throw std::invalid_argument("Bernoulli rewards require mu in [0,1]");
          return rng.bernoulli(mu) ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, GaussianNoise>) {
          return mu + v.sigma * rng.normal();
        } else if constexpr (std::is_same_v<T, UniformNoise>) {
          return mu + rng.uniform(-v.half_width, v.half_width);
        } else if constexpr (std::is_same_v<T, PointMassNoise>) {
          const double u = rng.u01();
          double acc = 0.0;
          for (const auto& [x, p] : v.atoms) {
            acc += p;
            if (u < acc) return mu + x;
          }
          return mu + v.atoms.back().first;
        } else if constexpr (std::is_same_v<T, SharpPeakNoise>) {
          const double z = rng.uniform(-1.0, 1.0);
          const double mag = std::pow(std::fabs(z), 1.0 / (1.0 - v.alpha));
          return mu + (z < 0.0 ? -mag : mag);
        } else if constexpr (std::is_same_v<T, JumpNoise>) {
          // mass 3/4 on the inner band, 1/4 on the outer
          const double u = rng.u01();
          double x;
          if (u < 0.75) {
            x = rng.uniform(-0.25, 0.25);
          } else {
            x = rng.uniform(0.25, 0.5);
            if (rng.bernoulli(0.5)) x = -x;
          }
          return mu + x;
        } else {
          const double z = std::pow(1.0 - rng.u01(), -1.0 / 3.5) - 1.0;
          const double x = v.scale * (rng.bernoulli(0.5) ? z : -z);
          return mu + x;
        }
      },
      r);
}

double noise_variance(const RewardModel& r) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BernoulliReward>) {
          throw std::invalid_argument("Bernoulli is not an additive-noise model");
        } else if constexpr (std::is_same_v<T, GaussianNoise>) {
          return v.sigma * v.sigma;
        } else if constexpr (std::is_same_v<T, UniformNoise>) {
          return v.half_width * v.half_width / 3.0;
        } else if constexpr (std::is_same_v<T, PointMassNoise>) {
          double s = 0.0;
          for (const auto& [x, p] : v.atoms) s += x * x * p;
          return s;
        } else if constexpr (std::is_same_v<T, SharpPeakNoise>) {
          return (1.0 - v.alpha) / (3.0 - v.alpha);
        } else if constexpr (std::is_same_v<T, JumpNoise>) {
          return 5.0 / 96.0;
        } else {
          return v.scale * v.scale * (8.0 / 15.0);
        }
      },
      r);
}

double noise_third_moment(const RewardModel& r) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BernoulliReward>) {
          throw std::invalid_argument("Bernoulli is not an additive-noise model");
        } else if constexpr (std::is_same_v<T, GaussianNoise>) {
          return v.sigma * v.sigma * v.sigma * 2.0 * std::sqrt(2.0 / M_PI);
        } else if constexpr (std::is_same_v<T, UniformNoise>) {
          return v.half_width * v.half_width * v.half_width / 4.0;
        } else if constexpr (std::is_same_v<T, PointMassNoise>) {
          double s = 0.0;
          for (const auto& [x, p] : v.atoms) s += std::fabs(x * x * x) * p;
          return s;
        } else if constexpr (std::is_same_v<T, SharpPeakNoise>) {
          return (1.0 - v.alpha) / (4.0 - v.alpha);
        } else if constexpr (std::is_same_v<T, JumpNoise>) {
          return 9.0 / 512.0;
        } else {
          return v.scale * v.scale * v.scale * 3.2;
        }
      },
      r);
}

bool reward_is_noiseless(const RewardModel& r) {
  if (const auto* pm = std::get_if<PointMassNoise>(&r))
    return pm->atoms.size() == 1 && pm->atoms.front().first == 0.0;
  return false;
}

}  // namespace lipmab
