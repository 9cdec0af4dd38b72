#include "lipmab/naive.hpp"

#include <cmath>
#include <stdexcept>

namespace lipmab {

void run_ucb1_phase(const ProblemInstance& inst, std::span<const Point> arm_points,
                    std::uint64_t rounds, Rng& rng, TraceRecorder* recorder,
                    std::vector<std::uint64_t>* pulls_out) {
  const std::size_t k = arm_points.size();
  if (k == 0) throw std::invalid_argument("ucb1: no arms");
  std::vector<double> sums(k, 0.0), mus(k);
  std::vector<std::uint64_t> pulls(k, 0);
  for (std::size_t j = 0; j < k; ++j) mus[j] = mu(inst, arm_points[j]);

  for (std::uint64_t t = 1; t <= rounds; ++t) {
    std::size_t chosen;
    if (t <= k) {
      chosen = static_cast<std::size_t>(t - 1);  // play each arm once first
    } else {
      chosen = 0;
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < k; ++j) {
        const double idx =
            sums[j] / static_cast<double>(pulls[j]) +
            std::sqrt(2.0 * std::log(static_cast<double>(t)) /
                      static_cast<double>(pulls[j]));
        if (idx > best) {
          best = idx;
          chosen = j;
        }
      }
    }
    const double reward = sample_reward(inst.rewards, mus[chosen], rng);
    pulls[chosen] += 1;
    sums[chosen] += reward;
    if (recorder) recorder->record(mus[chosen], reward);
  }
  if (pulls_out) *pulls_out = std::move(pulls);
}

RunTrace run_naive(const ProblemInstance& inst, const NaiveConfig& config,
                   std::uint64_t horizon, Rng& rng) {
  if (horizon < 1) throw std::invalid_argument("run_naive: horizon >= 1");
  if (config.d < 0.0) throw std::invalid_argument("run_naive: d >= 0");
  TraceRecorder recorder(horizon, mu_star(inst), config.full_resolution);
  std::uint64_t done = 0;
  for (int i = 1; done < horizon; ++i) {
    const std::uint64_t phase_len = std::uint64_t{1} << i;
    const double delta = naive_net_delta(static_cast<double>(phase_len), config.d);
    const Net net = build_net(inst.metric, delta, config.net_cap);
    const std::uint64_t len = std::min(phase_len, horizon - done);
    run_ucb1_phase(inst, net.points, len, rng, &recorder);
    done += len;
  }
  return recorder.take();
}

RunTrace run_ucb1_phased(const ProblemInstance& inst, const Ucb1Config& config,
                         std::uint64_t horizon, Rng& rng) {
  const auto* fm = std::get_if<FiniteExplicit>(&inst.metric);
  if (!fm)
    throw std::invalid_argument("ucb1 runs over the full strategy set and requires "
                                "a finite metric");
  std::vector<Point> arms;
  arms.reserve(fm->dist.size());
  for (std::size_t j = 0; j < fm->dist.size(); ++j) arms.push_back(make_finite_index(j));

  TraceRecorder recorder(horizon, mu_star(inst), config.full_resolution);
  std::uint64_t done = 0;
  for (int i = 1; done < horizon; ++i) {
    const std::uint64_t len = std::min(std::uint64_t{1} << i, horizon - done);
    run_ucb1_phase(inst, arms, len, rng, &recorder);
    done += len;
  }
  return recorder.take();
}

}  // namespace lipmab
