#include "lipmab/quota.hpp"

#include <cmath>
#include <stdexcept>

namespace lipmab {

CoverResult level_uncovered(const MetricDescriptor& m, const LevelSet& level,
                            std::span<const Ball> balls) {
  return std::visit(
      [&](const auto& v) -> CoverResult {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TreeFatLevel>) {
          return tree_fat_covering_query(m, v.max_entry, balls);
        } else if constexpr (std::is_same_v<T, SinglePointLevel>) {
          for (const auto& b : balls)
            if (distance(m, v.point, b.center) < b.radius) return CoverResult{};
          return CoverResult{v.point};
        } else {
          for (const auto& p : v.points) {
            bool covered = false;
            for (const auto& b : balls)
              if (distance(m, p, b.center) < b.radius) {
                covered = true;
                break;
              }
            if (!covered) return CoverResult{p};
          }
          return CoverResult{};
        }
      },
      level);
}

bool level_contains(const MetricDescriptor& m, const LevelSet& level, const Point& p) {
  return std::visit(
      [&](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TreeFatLevel>) {
          const auto* leaf = std::get_if<TreeLeaf>(&p);
          if (!leaf) return false;
          for (auto e : leaf->path)
            if (e >= static_cast<std::uint64_t>(v.max_entry)) return false;
          return true;
        } else if constexpr (std::is_same_v<T, SinglePointLevel>) {
          return distance(m, v.point, p) == 0.0;
        } else {
          for (const auto& q : v.points)
            if (distance(m, q, p) == 0.0) return true;
          return false;
        }
      },
      level);
}

double quota_cap(std::uint64_t phase_len, double d, std::size_t k) {
  const double T = static_cast<double>(phase_len);
  const double rho = std::pow(T, -1.0 / (d + 2.0));
  const double c_rho = 1.0 / (64.0 * static_cast<double>(k) * std::log(1.0 / rho));
  return c_rho * std::pow(rho, -d);
}

namespace {

struct QuotaPhaseState {
  std::vector<ArmRecord> arms;
  std::vector<Ball> balls;
  std::vector<int> pool;  // -1: net point, else pool level index 0..k
};

void activate(QuotaPhaseState& st, const ProblemInstance& inst, Point p, int pool,
              int i_ph, std::uint64_t global_round) {
  ArmRecord arm;
  arm.strategy = std::move(p);
  arm.activation_round = global_round;
  arm.radius = standard_radius(i_ph, 0);
  arm.true_mu = mu(inst, arm.strategy);
  st.balls.push_back({arm.strategy, arm.radius});
  st.arms.push_back(std::move(arm));
  st.pool.push_back(pool);
}

// Largest j such that the 2^-j net fits the budget; the coarsest net is used
// even when over budget so the phase always has an arm to play.
Net choose_net(const MetricDescriptor& m, double budget, std::size_t cap) {
  Net chosen = build_net(m, 1.0, cap);
  for (int j = 1; j < 60; ++j) {
    const double delta = std::exp2(-j);
    Net finer;
    try {
      finer = build_net(m, delta, cap);
    } catch (const net_cap_error&) {
      break;
    }
    if (static_cast<double>(finer.points.size()) > budget) break;
    if (finer.points.size() == chosen.points.size() && j > 20) break;
    chosen = std::move(finer);
  }
  return chosen;
}

void run_quota_phase(const ProblemInstance& inst, const QuotaConfig& config, int i_ph,
                     std::uint64_t phase_len, std::uint64_t rounds, Rng& rng,
                     TraceRecorder* recorder, std::uint64_t round_offset,
                     QuotaMonitor* monitor, bool* degenerate_out) {
  const std::size_t k = config.decomposition.levels.size();
  const double T = static_cast<double>(phase_len);
  const double rho = std::pow(T, -1.0 / (config.d + 2.0));
  const double cap = quota_cap(phase_len, config.d, k);
  const double budget = 0.5 * std::pow(T, config.d / (config.d + 2.0));

  QuotaPhaseState st;
  const Net net = choose_net(inst.metric, budget, config.net_cap);
  for (const auto& p : net.points) activate(st, inst, p, -1, i_ph, round_offset);
  if (static_cast<double>(net.points.size()) > budget && degenerate_out)
    *degenerate_out = true;

  // Count of pool-i arms whose radius still qualifies (>= rho).
  auto qualifying = [&](int level) {
    std::size_t c = 0;
    for (std::size_t a = 0; a < st.arms.size(); ++a)
      if (st.pool[a] == level && st.arms[a].radius >= rho) ++c;
    return c;
  };

  if (cap < 1.0 && degenerate_out) *degenerate_out = true;

  for (std::uint64_t t = 1; t <= rounds; ++t) {
    // Activation: deepest level first; a level admits activations while it
    // has uncovered strategies and room under its quota.
    for (int level = static_cast<int>(k); level >= 0; --level) {
      for (;;) {
        if (static_cast<double>(qualifying(level) + 1) > cap) break;
        CoverResult q =
            level == 0
                ? covering_query(inst.metric, st.balls)
                : level_uncovered(inst.metric,
                                  config.decomposition.levels[static_cast<std::size_t>(
                                      level - 1)],
                                  st.balls);
        if (q.covered()) break;
        // Pool 0 holds only points outside the deeper sets; a deep point
        // left uncovered here means its own level's quota is full.
        if (level == 0) {
          bool deeper = false;
          for (const auto& ls : config.decomposition.levels)
            if (level_contains(inst.metric, ls, *q.witness)) {
              deeper = true;
              break;
            }
          if (deeper) break;
        }
        activate(st, inst, *q.witness, level, i_ph, round_offset + t);
        if (monitor) ++monitor->pool_activations;
      }
    }

    if (monitor && monitor->check_quotas) {
      ++monitor->quota_checks;
      for (int level = 0; level <= static_cast<int>(k); ++level)
        if (static_cast<double>(qualifying(level)) > cap) ++monitor->quota_violations;
    }
    if (monitor && monitor->check_separation) {
      for (std::size_t a = 0; a < st.arms.size(); ++a) {
        if (st.pool[a] < 0 || st.arms[a].radius < rho) continue;
        for (std::size_t b = a + 1; b < st.arms.size(); ++b) {
          if (st.pool[b] != st.pool[a] || st.arms[b].radius < rho) continue;
          if (!(distance(inst.metric, st.arms[a].strategy, st.arms[b].strategy) > rho))
            ++monitor->separation_violations;
        }
      }
    }

    const std::size_t chosen = argmax_index(st.arms);
    ArmRecord& played = st.arms[chosen];
    const double reward = sample_reward(inst.rewards, played.true_mu, rng);
    played.plays += 1;
    played.reward_sum += reward;
    played.radius = standard_radius(i_ph, played.plays);
    st.balls[chosen].radius = played.radius;
    if (recorder) recorder->record(played.true_mu, reward);
  }
}

}  // namespace

RunTrace run_quota(const ProblemInstance& inst, const QuotaConfig& config,
                   std::uint64_t horizon, Rng& rng, QuotaMonitor* monitor) {
  if (horizon < 1) throw std::invalid_argument("run_quota: horizon >= 1");
  if (config.decomposition.levels.empty())
    throw std::invalid_argument("run_quota: decomposition must have depth k >= 1");
  if (!(config.d > config.decomposition.d_star))
    throw std::invalid_argument("run_quota: target d must exceed the decomposition's d*");

  TraceRecorder recorder(horizon, mu_star(inst), config.full_resolution);
  bool degenerate = false;
  std::uint64_t done = 0;
  for (int i_ph = 1; done < horizon; ++i_ph) {
    const std::uint64_t phase_len = std::uint64_t{1} << i_ph;
    const std::uint64_t len = std::min(phase_len, horizon - done);
    bool phase_degenerate = false;
    run_quota_phase(inst, config, i_ph, phase_len, len, rng, &recorder, done, monitor,
                    &phase_degenerate);
    if (phase_degenerate) {
      degenerate = true;
      if (monitor) ++monitor->degenerate_phases;
    }
    done += len;
  }
  RunTrace trace = recorder.take();
  trace.quota_degenerate = degenerate;
  return trace;
}

}  // namespace lipmab
