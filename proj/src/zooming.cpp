#include "lipmab/zooming.hpp"

#include <stdexcept>

namespace lipmab {

void run_zooming_phase(const ProblemInstance& inst, const ZoomingConfig& config,
                       int i_ph, std::uint64_t rounds, Rng& rng,
                       TraceRecorder* recorder, std::uint64_t round_offset,
                       ZoomingMonitor* monitor) {
  std::vector<ArmRecord> arms;
  std::vector<Ball> balls;  // parallel to arms, kept in sync

  for (std::uint64_t t = 1; t <= rounds; ++t) {
    // Step 1: activate uncovered strategies until the space is covered.
    for (;;) {
      auto q = covering_query(inst.metric, balls);
      if (q.covered()) break;
      if (arms.size() >= config.activation_cap)
        throw std::runtime_error("zooming: activation cap exceeded");
      ArmRecord arm;
      arm.strategy = *q.witness;
      arm.activation_round = round_offset + t;
      arm.radius = raw_radius(config.rule, i_ph, t, 0, 0.0);
      arm.true_mu = mu(inst, arm.strategy);
      balls.push_back({arm.strategy, arm.radius});
      arms.push_back(std::move(arm));
    }
    if (monitor && monitor->check_coverage) {
      ++monitor->coverage_checks;
      if (!covering_query(inst.metric, balls).covered()) ++monitor->coverage_failures;
    }

    // Step 2: play the active strategy with the maximal index.
    const std::size_t k = argmax_index(arms);
    ArmRecord& played = arms[k];
    const double reward = sample_reward(inst.rewards, played.true_mu, rng);
    played.plays += 1;
    played.reward_sum += reward;
    played.radius = smoothed_radius(
        played.radius,
        raw_radius(config.rule, i_ph, t, played.plays, played.mean()));
    balls[k].radius = played.radius;

    if (recorder) recorder->record(played.true_mu, reward);
    if (monitor && monitor->on_played) monitor->on_played(i_ph, t, arms, k);
  }
  if (monitor && monitor->on_phase_end) monitor->on_phase_end(i_ph, arms);
}

RunTrace run_zooming(const ProblemInstance& inst, const ZoomingConfig& config,
                     std::uint64_t horizon, Rng& rng, ZoomingMonitor* monitor) {
  if (horizon < 1) throw std::invalid_argument("run_zooming: horizon >= 1");
  TraceRecorder recorder(horizon, mu_star(inst), config.full_resolution);
  std::uint64_t done = 0;
  for (int i_ph = 1; done < horizon; ++i_ph) {
    const std::uint64_t len =
        std::min(std::uint64_t{1} << i_ph, horizon - done);
    run_zooming_phase(inst, config, i_ph, len, rng, &recorder, done, monitor);
    done += len;
  }
  return recorder.take();
}

}  // namespace lipmab
