#pragma once

#include <cstdint>
#include <stdexcept>
#include <variant>

namespace lipmab {

// r = sqrt(8 * i_ph / (2 + n)).
double standard_radius(int i_ph, std::uint64_t n);

// I = mean + 2 * radius.
double optimistic_index(double mean, double radius);

// r = alpha/(1+n) + sqrt(alpha*(1-mean)/(1+n)); mean must lie in [0,1].
double max_reward_one_radius(double alpha, std::uint64_t n, double mean);

// r(alpha, x) = alpha/n + sqrt(alpha*x/n), n >= 1.
double chernoff_radius(double alpha, std::uint64_t n, double x);

// delta = T^(-1/(d+2)).
double naive_net_delta(double horizon, double d);

// ---- pluggable confidence-radius rules ---------------------------------

struct StandardRule {
  double c = 8.0;  // constant inside the root
};
struct ScaledGaussianRule {
  double sigma = 0.1;
  double c = 8.0;
};
// Azuma form, valid only for lambda <= rho*sigma*sqrt(n)/2; below the
// implied n-floor the arm counts as unexplored (radius +inf).
struct StochBoundedRule {
  double rho = 1.0;
  double sigma = 0.1;
  double c = 8.0;
};
struct PointMassRule {
  double c = 1.0;  // r = c * i_ph * (3/4)^n
};
struct SharpPeakRule {
  double alpha = 0.5;  // r = (c*i_ph/n)^(1/(1-alpha))
  double c = 1.0;
};
struct JumpRule {
  double c = 1.0;  // r = c * i_ph / n
};
struct MaxRewardOneRule {
  double c = 8.0;  // alpha = c * i_ph
};
struct HeavyTailRule {
  double a = 1.0 / 9.0;  // r = c * t^a / sqrt(n)
  double c = 1.0;
};

using RadiusRuleVariant =
    std::variant<StandardRule, ScaledGaussianRule, StochBoundedRule, PointMassRule,
                 SharpPeakRule, JumpRule, MaxRewardOneRule, HeavyTailRule>;

struct RadiusRule : RadiusRuleVariant {
  using RadiusRuleVariant::RadiusRuleVariant;
};

// Raw formula value at phase i_ph, in-phase round t, play count n and sample
// mean. +inf marks an unexplored regime (n = 0 for the asymptotic rules,
// below the StochBounded floor). The play engine smooths raw values into the
// monotone 3/4-contract.
double raw_radius(const RadiusRule& rule, int i_ph, std::uint64_t t, std::uint64_t n,
                  double mean);

}  // namespace lipmab
