#include "lipmab/radius.hpp"

#include <cmath>
#include <limits>

namespace lipmab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double standard_radius(int i_ph, std::uint64_t n) {
  if (i_ph < 1) throw std::invalid_argument("standard_radius: i_ph >= 1");
  return std::sqrt(8.0 * static_cast<double>(i_ph) / (2.0 + static_cast<double>(n)));
}

double optimistic_index(double mean, double radius) {
  if (radius < 0.0) throw std::invalid_argument("optimistic_index: radius >= 0");
  return mean + 2.0 * radius;
}

double max_reward_one_radius(double alpha, std::uint64_t n, double mean) {
  if (!(alpha > 0.0)) throw std::invalid_argument("max_reward_one_radius: alpha > 0");
  if (mean < 0.0 || mean > 1.0)
    throw std::invalid_argument("max_reward_one_radius: mean must be in [0,1]");
  const double n1 = 1.0 + static_cast<double>(n);
  return alpha / n1 + std::sqrt(alpha * (1.0 - mean) / n1);
}

double chernoff_radius(double alpha, std::uint64_t n, double x) {
  if (!(alpha > 0.0) || n < 1 || x < 0.0)
    throw std::invalid_argument("chernoff_radius: alpha > 0, n >= 1, x >= 0");
  const double nd = static_cast<double>(n);
  return alpha / nd + std::sqrt(alpha * x / nd);
}

double naive_net_delta(double horizon, double d) {
  if (!(horizon >= 1.0) || d < 0.0)
    throw std::invalid_argument("naive_net_delta: horizon >= 1, d >= 0");
  return std::pow(horizon, -1.0 / (d + 2.0));
}

double raw_radius(const RadiusRule& rule, int i_ph, std::uint64_t t, std::uint64_t n,
                  double mean) {
  if (i_ph < 1) throw std::invalid_argument("raw_radius: i_ph >= 1");
  const double iph = static_cast<double>(i_ph);
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, StandardRule>) {
          return std::sqrt(r.c * iph / (2.0 + static_cast<double>(n)));
        } else if constexpr (std::is_same_v<T, ScaledGaussianRule>) {
          return r.sigma * std::sqrt(r.c * iph / (2.0 + static_cast<double>(n)));
        } else if constexpr (std::is_same_v<T, StochBoundedRule>) {
          // radius valid only while r <= rho*sigma^2/2
          const double raw =
              r.sigma * std::sqrt(r.c * iph / (2.0 + static_cast<double>(n)));
          if (raw > 0.5 * r.rho * r.sigma * r.sigma) return kInf;
          return raw;
        } else if constexpr (std::is_same_v<T, PointMassRule>) {
          return r.c * iph * std::pow(0.75, static_cast<double>(n));
        } else if constexpr (std::is_same_v<T, SharpPeakRule>) {
          if (n == 0) return kInf;
          return std::pow(r.c * iph / static_cast<double>(n), 1.0 / (1.0 - r.alpha));
        } else if constexpr (std::is_same_v<T, JumpRule>) {
          if (n == 0) return kInf;
          return r.c * iph / static_cast<double>(n);
        } else if constexpr (std::is_same_v<T, MaxRewardOneRule>) {
          return max_reward_one_radius(r.c * iph, n, mean);
        } else {
          if (n == 0) return kInf;
          return r.c * std::pow(static_cast<double>(t), r.a) /
                 std::sqrt(static_cast<double>(n));
        }
      },
      rule);
}

}  // namespace lipmab
