#include "lipmab/instance.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace lipmab {

void validate_instance(const ProblemInstance& inst) {
  validate(inst.metric);
  validate_payoff(inst.metric, inst.payoff);
  validate_reward(inst.rewards);
}

// ---- needle-in-haystack generator --------------------------------------

namespace {

Point origin_point(const MetricDescriptor& m) {
  return std::visit(
      [&](const auto& v) -> Point {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntervalLd>) {
          return make_interval_point(0.5);
        } else if constexpr (std::is_same_v<T, FiniteExplicit>) {
          if (v.dist.empty()) throw std::invalid_argument("origin of empty space");
          return make_finite_index(0);
        } else if constexpr (std::is_same_v<T, WeightedTree>) {
          return make_tree_leaf(
              std::vector<std::uint64_t>(static_cast<std::size_t>(v.depth), 0));
        } else if constexpr (std::is_same_v<T, ProductMetric>) {
          return make_product_point(origin_point(*v.left), origin_point(*v.right));
        } else {
          return origin_point(*v.base);
        }
      },
      m);
}

}  // namespace

PayoffDescriptor generate_needle_tower(const MetricDescriptor& host,
                                       const NeedleTowerSpec& spec) {
  if (!(spec.a > 0.0) || !(spec.a < spec.b))
    throw std::invalid_argument("NeedleTowerSpec requires 0 < a < b");
  if (spec.depth_cap < 0) throw std::invalid_argument("depth_cap must be >= 0");

  NeedleTowerPayoff needle;
  needle.a = spec.a;
  needle.b = spec.b;

  Rng rng(spec.seed);
  Point parent_center = origin_point(host);
  double parent_radius = 1.0;  // diameter <= 1, so the root ball holds X

  for (int level = 1; level <= spec.depth_cap; ++level) {
    double r = parent_radius / 8.0;
    std::vector<Point> centers;
    std::uint64_t n = 0;
    bool ok = false;
    for (int attempt = 0; attempt < 70 && r > 1e-300; ++attempt, r /= 2.0) {
      const double need = std::ceil(std::pow(r, -spec.b));
      if (need > 1e7) break;  // construction infeasible at sane sizes
      n = static_cast<std::uint64_t>(need);
      // Centers confined to the parent's flat half-ball so the slope annuli
      // of different levels never overlap (keeps mu exactly 1-Lipschitz).
      // Level 1 packs the whole space: f_0 is constant, no flat region yet.
      std::optional<Ball> region;
      if (level > 1) {
        const double region_radius = parent_radius / 2.0 - r;
        if (!(region_radius > 0.0)) continue;
        region = Ball{parent_center, region_radius};
      }
      centers = max_packing(host, r, region, n);
      if (centers.size() >= n) {
        ok = true;
        break;
      }
    }
    if (!ok)
      throw needle_error("needle tower: packing infeasible at level " +
                         std::to_string(level));
    const std::uint64_t pick = rng.bounded(n);
    needle.chain.push_back(NeedleLevel{centers[pick], r, n, pick});
    parent_center = centers[pick];
    parent_radius = r;
  }

  PayoffDescriptor payoff{needle};
  auto& nt = std::get<NeedleTowerPayoff>(payoff);
  nt.tail_bound = nt.chain.empty() ? 0.0 : nt.chain.back().radius / 6.0;
  nt.mu_star_exact =
      nt.chain.empty() ? 1.0 / 3.0
                       : payoff_mu(host, payoff, nt.chain.back().center);
  return payoff;
}

namespace {

nlohmann::json point_to_json(const Point& p) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        nlohmann::json j;
        if constexpr (std::is_same_v<T, IntervalPoint>) {
          j["kind"] = "interval";
          j["x"] = v.x;
        } else if constexpr (std::is_same_v<T, FiniteIndex>) {
          j["kind"] = "finite";
          j["i"] = v.i;
        } else if constexpr (std::is_same_v<T, TreeLeaf>) {
          j["kind"] = "tree";
          j["path"] = v.path;
        } else {
          j["kind"] = "product";
          j["left"] = point_to_json(*v.left);
          j["right"] = point_to_json(*v.right);
        }
        return j;
      },
      p);
}

Point point_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "interval") return make_interval_point(j.at("x").get<double>());
  if (kind == "finite") return make_finite_index(j.at("i").get<std::size_t>());
  if (kind == "tree")
    return make_tree_leaf(j.at("path").get<std::vector<std::uint64_t>>());
  if (kind == "product")
    return make_product_point(point_from_json(j.at("left")),
                              point_from_json(j.at("right")));
  throw std::invalid_argument("unknown point kind: " + kind);
}

}  // namespace

std::string needle_to_json(const NeedleTowerPayoff& needle) {
  nlohmann::json j;
  j["a"] = needle.a;
  j["b"] = needle.b;
  j["mu_star_exact"] = needle.mu_star_exact;
  j["tail_bound"] = needle.tail_bound;
  j["chain"] = nlohmann::json::array();
  for (const auto& lvl : needle.chain) {
    nlohmann::json e;
    e["center"] = point_to_json(lvl.center);
    e["radius"] = lvl.radius;
    e["balls_in_level"] = lvl.balls_in_level;
    e["chosen_index"] = lvl.chosen_index;
    j["chain"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

NeedleTowerPayoff needle_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  NeedleTowerPayoff needle;
  needle.a = j.at("a").get<double>();
  needle.b = j.at("b").get<double>();
  needle.mu_star_exact = j.at("mu_star_exact").get<double>();
  needle.tail_bound = j.at("tail_bound").get<double>();
  for (const auto& e : j.at("chain")) {
    NeedleLevel lvl;
    lvl.center = point_from_json(e.at("center"));
    lvl.radius = e.at("radius").get<double>();
    lvl.balls_in_level = e.at("balls_in_level").get<std::uint64_t>();
    lvl.chosen_index = e.at("chosen_index").get<std::uint64_t>();
    needle.chain.push_back(std::move(lvl));
  }
  return needle;
}

// ---- sampled verification ----------------------------------------------

LipschitzReport verify_lipschitz(const ProblemInstance& inst, std::size_t n_pairs,
                                 Rng& rng) {
  if (n_pairs < 1) throw std::invalid_argument("verify_lipschitz: n_pairs >= 1");
  LipschitzReport report;
  report.pairs = n_pairs;
  if (is_quasi_distance(inst.metric)) {
    // Relaxed condition: Delta(u) <= L(u, v*) for the optimal witness.
    const Point vstar = payoff_optimal_witness(inst.metric, inst.payoff);
    const double mstar = mu_star(inst);
    report.worst_u = vstar;
    report.worst_v = vstar;
    for (std::size_t k = 0; k < n_pairs; ++k) {
      const Point u = sample_point(inst.metric, rng);
      const double viol = (mstar - mu(inst, u)) - distance(inst.metric, u, vstar);
      if (viol > report.max_violation) {
        report.max_violation = viol;
        report.worst_u = u;
      }
    }
    return report;
  }
  report.worst_u = payoff_optimal_witness(inst.metric, inst.payoff);
  report.worst_v = report.worst_u;
  for (std::size_t k = 0; k < n_pairs; ++k) {
    const Point u = sample_point(inst.metric, rng);
    const Point v = sample_point(inst.metric, rng);
    const double viol =
        std::fabs(mu(inst, u) - mu(inst, v)) - distance(inst.metric, u, v);
    if (viol > report.max_violation) {
      report.max_violation = viol;
      report.worst_u = u;
      report.worst_v = v;
    }
  }
  return report;
}

// ---- zooming-dimension estimator ---------------------------------------

namespace {

// Tree shells via branch-and-bound: the payoff varies by at most the node
// weight inside a subtree, so whole subtrees are pruned against the band.
void tree_shell_rec(const ProblemInstance& inst, const WeightedTree& tree, double mstar,
                    double lo, double hi, int rep_level,
                    std::vector<std::uint64_t>& prefix, std::vector<Point>& out,
                    std::size_t cap) {
  std::vector<std::uint64_t> full = prefix;
  full.resize(static_cast<std::size_t>(tree.depth), 0);
  const Point rep = make_tree_leaf(std::move(full));
  const double delta_rep = mstar - mu(inst, rep);
  const int level = static_cast<int>(prefix.size());
  if (level >= rep_level) {
    if (delta_rep > lo && delta_rep <= hi) {
      if (out.size() >= cap) throw net_cap_error("shell_points: cap exceeded");
      out.push_back(rep);
    }
    return;
  }
  const double w = tree_level_weight(tree, level);
  if (delta_rep - w > hi || delta_rep + w <= lo) return;
  const auto b = tree_branching(tree, prefix);
  for (std::int64_t c = 0; c < b; ++c) {
    prefix.push_back(static_cast<std::uint64_t>(c));
    tree_shell_rec(inst, tree, mstar, lo, hi, rep_level, prefix, out, cap);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Point> shell_points(const ProblemInstance& inst, double lo, double hi,
                                double resolution, std::size_t cap) {
  if (const auto* tree = std::get_if<WeightedTree>(&inst.metric)) {
    int rep_level = 0;
    while (rep_level < tree->depth &&
           !(tree_level_weight(*tree, rep_level) <= resolution))
      ++rep_level;
    if (tree_level_weight(*tree, rep_level) > resolution)
      throw std::invalid_argument(
          "shell_points: discretization too coarse relative to min radius");
    std::vector<Point> out;
    std::vector<std::uint64_t> prefix;
    tree_shell_rec(inst, *tree, mu_star(inst), lo, hi, rep_level, prefix, out, cap);
    return out;
  }
  const auto grid = representative_grid(inst.metric, resolution, cap);
  const double mstar = mu_star(inst);
  std::vector<Point> out;
  for (const auto& p : grid) {
    const double delta = mstar - mu(inst, p);
    if (delta > lo && delta <= hi) out.push_back(p);
  }
  return out;
}

std::size_t greedy_cover_count(const MetricDescriptor& m, std::span<const Point> points,
                               double cover_radius) {
  std::vector<bool> covered(points.size(), false);
  std::size_t count = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (covered[i]) continue;
    ++count;
    for (std::size_t j = i; j < points.size(); ++j) {
      if (!covered[j] && distance(m, points[i], points[j]) <= cover_radius)
        covered[j] = true;
    }
  }
  return count;
}

DimensionEstimate zooming_dimension_estimate(const ProblemInstance& inst, double C,
                                             std::span<const double> radii,
                                             double resolution_factor, std::size_t cap) {
  if (!(C > 0.0)) throw std::invalid_argument("dimension estimate: C > 0");
  DimensionEstimate est;
  for (const double r : radii) {
    if (!(r > 0.0) || r >= 1.0)
      throw std::invalid_argument("dimension estimate: radii must be in (0,1)");
    const double resolution = r / resolution_factor;
    const auto pts = shell_points(inst, r / 2.0, r, resolution, cap);
    const std::size_t count = greedy_cover_count(inst.metric, pts, r / 16.0);
    est.radii.push_back(r);
    est.cover_counts.push_back(count);
    if (count > 0) est.any_nonempty = true;
    if (static_cast<double>(count) > C) {
      const double d_r = std::log(static_cast<double>(count) / C) / std::log(1.0 / r);
      est.d_hat = std::max(est.d_hat, d_r);
    }
  }
  return est;
}

}  // namespace lipmab
