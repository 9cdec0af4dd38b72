#include "lipmab/trace.hpp"

#include <cmath>
#include <stdexcept>

namespace lipmab {

std::vector<std::uint64_t> checkpoint_grid(std::uint64_t horizon) {
  std::vector<std::uint64_t> grid;
  double x = 1.0;
  for (;;) {
    const auto t = static_cast<std::uint64_t>(std::ceil(x));
    if (t >= horizon) break;
    if (grid.empty() || grid.back() != t) grid.push_back(t);
    x *= 1.25;
  }
  grid.push_back(horizon);
  return grid;
}

TraceRecorder::TraceRecorder(std::uint64_t horizon, double mu_star, bool full_resolution)
    : full_(full_resolution) {
  trace_.horizon = horizon;
  trace_.mu_star = mu_star;
  trace_.checkpoint_t = checkpoint_grid(horizon);
  trace_.checkpoint_regret.reserve(trace_.checkpoint_t.size());
  if (full_) trace_.rounds.reserve(horizon);
}

void TraceRecorder::record(double mu_chosen, double reward) {
  ++t_;
  trace_.total_mu += mu_chosen;
  trace_.total_reward += reward;
  if (full_) trace_.rounds.push_back({t_, mu_chosen, reward});
  if (next_checkpoint_ < trace_.checkpoint_t.size() &&
      trace_.checkpoint_t[next_checkpoint_] == t_) {
    trace_.checkpoint_regret.push_back(static_cast<double>(t_) * trace_.mu_star -
                                       trace_.total_mu);
    ++next_checkpoint_;
  }
}

RunTrace TraceRecorder::take() {
  if (next_checkpoint_ != trace_.checkpoint_t.size())
    throw std::logic_error("TraceRecorder: run ended before the horizon");
  return std::move(trace_);
}

ExponentFit fit_exponent(const RegretCurve& curve, double window_fraction) {
  if (!(window_fraction > 0.0) || !(window_fraction < 1.0))
    throw std::invalid_argument("fit_exponent: window_fraction in (0,1)");
  const std::size_t k = curve.t.size();
  if (k < 8) throw std::invalid_argument("fit_exponent: need >= 8 checkpoints");
  std::size_t window =
      static_cast<std::size_t>(std::ceil(window_fraction * static_cast<double>(k)));
  if (window < 5) window = 5;
  const std::size_t first = k - window;

  ExponentFit fit;
  fit.window_points = window;
  fit.t_lo = static_cast<double>(curve.t[first]);
  fit.t_hi = static_cast<double>(curve.t[k - 1]);
  for (std::size_t i = first; i < k; ++i)
    if (!(curve.mean[i] > 0.0)) return fit;  // exponent undefined, flagged

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = first; i < k; ++i) {
    const double x = std::log(static_cast<double>(curve.t[i]));
    const double y = std::log(curve.mean[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(window);
  const double denom = n * sxx - sx * sx;
  if (denom <= 0.0) return fit;
  fit.gamma = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.gamma * sx) / n;
  double ss = 0.0;
  for (std::size_t i = first; i < k; ++i) {
    const double x = std::log(static_cast<double>(curve.t[i]));
    const double y = std::log(curve.mean[i]);
    const double e = y - (fit.intercept + fit.gamma * x);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  fit.defined = true;
  return fit;
}

}  // namespace lipmab
