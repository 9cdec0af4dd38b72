#pragma once

#include <vector>

#include "lipmab/metric.hpp"
#include "lipmab/point.hpp"

namespace lipmab {

// mu(i) = values[i] on a finite space.
struct ExplicitFinitePayoff {
  std::vector<double> values;
};

// mu(u) = 1 - min_s L(u, s).
struct DistanceToTargetPayoff {
  std::vector<Point> targets;
};

// mu(u) = 1 - f(L(u, S)) for a known monotone shape f.
struct ShapedTargetPayoff {
  std::vector<Point> targets;
  ShapeFunction shape;
};

// mu(u) = clamp(peak_value - L(u, peak), 0, 1), peak_value <= 1.
struct PeakPayoff {
  Point peak;
  double peak_value = 1.0;
};

struct NeedleLevel {
  Point center;
  double radius = 0.0;
  std::uint64_t balls_in_level = 0;  // n_i, count of disjoint balls constructed
  std::uint64_t chosen_index = 0;
};

// Realized needle-in-haystack tower: mu = 1/3 + sum_i f_{B_i} over the
// sampled ball chain, truncated at depth_cap.
struct NeedleTowerPayoff {
  std::vector<NeedleLevel> chain;
  double mu_star_exact = 1.0 / 3.0;  // mu at the deepest center
  double tail_bound = 0.0;           // bound on the truncated levels' mass
  double a = 0.0, b = 0.0;           // construction exponents
};

// Diagnostic fixture: peak payoff plus a step discontinuity, deliberately
// non-Lipschitz. Only meaningful on IntervalLd.
struct StepAnomalyPayoff {
  Point peak;
  double peak_value = 0.4;
  double step_at = 0.7;
  double step_height = 0.5;
};

using PayoffVariant =
    std::variant<ExplicitFinitePayoff, DistanceToTargetPayoff, ShapedTargetPayoff,
                 PeakPayoff, NeedleTowerPayoff, StepAnomalyPayoff>;

struct PayoffDescriptor : PayoffVariant {
  using PayoffVariant::PayoffVariant;
};

void validate_payoff(const MetricDescriptor& m, const PayoffDescriptor& payoff);

double payoff_mu(const MetricDescriptor& m, const PayoffDescriptor& payoff, const Point& u);

// Analytic supremum of mu (needle: exact truncated max plus tail bound).
double payoff_mu_star(const MetricDescriptor& m, const PayoffDescriptor& payoff);

// Point achieving (or epsilon-approaching) mu_star.
Point payoff_optimal_witness(const MetricDescriptor& m, const PayoffDescriptor& payoff);

// Documented epsilon by which the witness may fall short of mu_star.
double payoff_witness_epsilon(const PayoffDescriptor& payoff);

}  // namespace lipmab
