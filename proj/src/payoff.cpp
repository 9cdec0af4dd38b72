#include "lipmab/payoff.hpp"

#include <algorithm>
#include <cmath>

namespace lipmab {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

double min_target_distance(const MetricDescriptor& m, std::span<const Point> targets,
                           const Point& u) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : targets) best = std::min(best, distance(m, u, s));
  return best;
}

double needle_f(const MetricDescriptor& m, const NeedleLevel& lvl, const Point& u) {
  const double L = distance(m, u, lvl.center);
  if (!(L < lvl.radius)) return 0.0;
  return std::min(lvl.radius - L, lvl.radius / 2.0);
}

double step_anomaly_mu(const StepAnomalyPayoff& v, double x, double peak_x) {
  double mu = clamp01(v.peak_value - std::fabs(x - peak_x));
  if (x >= v.step_at) mu += v.step_height;
  return clamp01(mu);
}

}  // namespace

void validate_payoff(const MetricDescriptor& m, const PayoffDescriptor& payoff) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ExplicitFinitePayoff>) {
          const auto* fm = std::get_if<FiniteExplicit>(&m);
          if (!fm) throw kind_error("ExplicitFinitePayoff requires a finite metric");
          if (v.values.size() != fm->dist.size())
            throw std::invalid_argument("ExplicitFinitePayoff: size mismatch with metric");
          for (double x : v.values)
            if (x < 0.0 || x > 1.0)
              throw std::invalid_argument("ExplicitFinitePayoff: values must be in [0,1]");
        } else if constexpr (std::is_same_v<T, DistanceToTargetPayoff> ||
                             std::is_same_v<T, ShapedTargetPayoff>) {
          if (v.targets.empty())
            throw std::invalid_argument("target payoff: empty target set");
          for (const auto& s : v.targets) validate_point(m, s);
        } else if constexpr (std::is_same_v<T, PeakPayoff>) {
          validate_point(m, v.peak);
          if (v.peak_value < 0.0 || v.peak_value > 1.0)
            throw std::invalid_argument("PeakPayoff: peak_value must be in [0,1]");
        } else if constexpr (std::is_same_v<T, NeedleTowerPayoff>) {
          for (const auto& lvl : v.chain) validate_point(m, lvl.center);
        } else {
          if (!std::holds_alternative<IntervalLd>(m))
            throw kind_error("StepAnomalyPayoff requires an interval metric");
          validate_point(m, v.peak);
        }
      },
      payoff);
}

double payoff_mu(const MetricDescriptor& m, const PayoffDescriptor& payoff, const Point& u) {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ExplicitFinitePayoff>) {
          const auto* fp = std::get_if<FiniteIndex>(&u);
          if (!fp || fp->i >= v.values.size())
            throw kind_error("payoff_mu: invalid finite index");
          return v.values[fp->i];
        } else if constexpr (std::is_same_v<T, DistanceToTargetPayoff>) {
          return clamp01(1.0 - min_target_distance(m, v.targets, u));
        } else if constexpr (std::is_same_v<T, ShapedTargetPayoff>) {
          // the shape always acts on the true base distance; the instance
          // metric may itself be the matching quasi-distance
          return clamp01(
              1.0 - v.shape(min_target_distance(strip_shape(m), v.targets, u)));
        } else if constexpr (std::is_same_v<T, PeakPayoff>) {
          return clamp01(v.peak_value - distance(m, u, v.peak));
        } else if constexpr (std::is_same_v<T, NeedleTowerPayoff>) {
          double mu = 1.0 / 3.0;
          for (const auto& lvl : v.chain) mu += needle_f(m, lvl, u);
          return mu;
        } else {
          const auto* ip = std::get_if<IntervalPoint>(&u);
          const auto* pp = std::get_if<IntervalPoint>(&v.peak);
          if (!ip || !pp) throw kind_error("StepAnomalyPayoff: interval points required");
          return step_anomaly_mu(v, ip->x, pp->x);
        }
      },
      payoff);
}

double payoff_mu_star([[maybe_unused]] const MetricDescriptor& m,
                      const PayoffDescriptor& payoff) {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ExplicitFinitePayoff>) {
          return v.values.empty() ? 0.0
                                  : *std::max_element(v.values.begin(), v.values.end());
        } else if constexpr (std::is_same_v<T, DistanceToTargetPayoff>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, ShapedTargetPayoff>) {
          return clamp01(1.0 - v.shape(0.0));
        } else if constexpr (std::is_same_v<T, PeakPayoff>) {
          return v.peak_value;
        } else if constexpr (std::is_same_v<T, NeedleTowerPayoff>) {
          return v.mu_star_exact + v.tail_bound;
        } else {
          // Piecewise linear with kinks at the peak and the step; the
          // supremum sits at one of them or at the domain ends.
          const auto* pp = std::get_if<IntervalPoint>(&v.peak);
          if (!pp) throw kind_error("StepAnomalyPayoff: interval peak required");
          double best = 0.0;
          for (double x : {0.0, pp->x, v.step_at, 1.0})
            best = std::max(best, step_anomaly_mu(v, x, pp->x));
          return best;
        }
      },
      payoff);
}

Point payoff_optimal_witness(const MetricDescriptor& m, const PayoffDescriptor& payoff) {
  return std::visit(
      [&](const auto& v) -> Point {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ExplicitFinitePayoff>) {
          if (v.values.empty()) throw std::invalid_argument("empty payoff");
          const auto it = std::max_element(v.values.begin(), v.values.end());
          return make_finite_index(static_cast<std::size_t>(it - v.values.begin()));
        } else if constexpr (std::is_same_v<T, DistanceToTargetPayoff> ||
                             std::is_same_v<T, ShapedTargetPayoff>) {
          return v.targets.front();
        } else if constexpr (std::is_same_v<T, PeakPayoff>) {
          return v.peak;
        } else if constexpr (std::is_same_v<T, NeedleTowerPayoff>) {
          if (v.chain.empty()) {
            // depth 0: mu is constant 1/3, any point is optimal
            Rng rng(0);
            return sample_point(m, rng);
          }
          return v.chain.back().center;
        } else {
          const auto* pp = std::get_if<IntervalPoint>(&v.peak);
          if (!pp) throw kind_error("StepAnomalyPayoff: interval peak required");
          double best = -1.0, best_x = 0.0;
          for (double x : {0.0, pp->x, v.step_at, 1.0}) {
            const double mu = step_anomaly_mu(v, x, pp->x);
            if (mu > best) {
              best = mu;
              best_x = x;
            }
          }
          return make_interval_point(best_x);
        }
      },
      payoff);
}

double payoff_witness_epsilon(const PayoffDescriptor& payoff) {
  if (const auto* nt = std::get_if<NeedleTowerPayoff>(&payoff)) return nt->tail_bound;
  return 0.0;
}

}  // namespace lipmab
