#include "lipmab/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace lipmab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

FlatConfig FlatConfig::parse_text(const std::string& text) {
  FlatConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error(lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw config_error(lineno, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error(lineno, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw config_error(lineno, "empty key");
    const std::string full = section.empty() ? key : section + "." + key;
    if (cfg.entries_.count(full))
      throw config_error(lineno, "duplicate key: " + full);
    cfg.entries_[full] = {value, lineno};
  }
  return cfg;
}

FlatConfig FlatConfig::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error(0, "cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

bool FlatConfig::has(const std::string& key) const {
  consumed_.insert(key);
  return entries_.count(key) > 0;
}

int FlatConfig::line_of(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.second;
}

std::string FlatConfig::get_string(const std::string& key) const {
  consumed_.insert(key);
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw config_error(0, "missing required key: " + key);
  return it->second.first;
}

std::string FlatConfig::get_string(const std::string& key,
                                   const std::string& fallback) const {
  consumed_.insert(key);
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second.first;
}

double FlatConfig::get_double(const std::string& key) const {
  const std::string s = get_string(key);
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw config_error(line_of(key), "not a number: " + key + " = " + s);
  }
}

double FlatConfig::get_double(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  return get_double(key);
}

std::int64_t FlatConfig::get_int(const std::string& key) const {
  const std::string s = get_string(key);
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw config_error(line_of(key), "not an integer: " + key + " = " + s);
  return v;
}

std::int64_t FlatConfig::get_int(const std::string& key, std::int64_t fallback) const {
  if (!has(key)) return fallback;
  return get_int(key);
}

std::vector<std::string> FlatConfig::get_list(const std::string& key) const {
  const std::string s = get_string(key);
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto semi = s.find(';', start);
    const std::string item =
        trim(semi == std::string::npos ? s.substr(start) : s.substr(start, semi - start));
    if (!item.empty()) out.push_back(item);
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  if (out.empty()) throw config_error(line_of(key), "empty list: " + key);
  return out;
}

void FlatConfig::set(const std::string& key, const std::string& value) {
  const auto it = entries_.find(key);
  const int line = it == entries_.end() ? 0 : it->second.second;
  entries_[key] = {value, line};
}

std::vector<std::string> FlatConfig::unconsumed() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_)
    if (!consumed_.count(k)) out.push_back(k);
  return out;
}

// ---- experiment builders -------------------------------------------------

Point parse_point(const MetricDescriptor& m, const std::string& text, int line) {
  return std::visit(
      [&](const auto& v) -> Point {
        using T = std::decay_t<decltype(v)>;
        try {
          if constexpr (std::is_same_v<T, IntervalLd>) {
            return make_interval_point(std::stod(text));
          } else if constexpr (std::is_same_v<T, FiniteExplicit>) {
            return make_finite_index(static_cast<std::size_t>(std::stoull(text)));
          } else if constexpr (std::is_same_v<T, WeightedTree>) {
            std::vector<std::uint64_t> path;
            std::size_t start = 0;
            while (start < text.size()) {
              const auto colon = text.find(':', start);
              const std::string item = colon == std::string::npos
                                           ? text.substr(start)
                                           : text.substr(start, colon - start);
              path.push_back(std::stoull(item));
              if (colon == std::string::npos) break;
              start = colon + 1;
            }
            path.resize(static_cast<std::size_t>(v.depth), 0);
            return make_tree_leaf(std::move(path));
          } else if constexpr (std::is_same_v<T, ProductMetric>) {
            const auto pipe = text.find('|');
            if (pipe == std::string::npos)
              throw config_error(line, "product point needs '<left>|<right>'");
            return make_product_point(parse_point(*v.left, text.substr(0, pipe), line),
                                      parse_point(*v.right, text.substr(pipe + 1), line));
          } else {
            return parse_point(*v.base, text, line);
          }
        } catch (const config_error&) {
          throw;
        } catch (...) {
          throw config_error(line, "malformed point literal: " + text);
        }
      },
      m);
}

MetricDescriptor build_metric(const FlatConfig& cfg, const std::string& section) {
  const std::string kind_key = section + ".kind";
  if (!cfg.has(kind_key))
    throw config_error(0, "missing [" + section + "] section with key 'kind'");
  const std::string kind = cfg.get_string(kind_key);
  const int line = cfg.line_of(kind_key);
  MetricDescriptor m;
  if (kind == "interval") {
    m = IntervalLd{cfg.get_double(section + ".d", 1.0)};
  } else if (kind == "finite") {
    // rows separated by ';', entries by ','
    const auto rows = cfg.get_list(section + ".distances");
    FiniteExplicit fe;
    for (const auto& row : rows) {
      std::vector<double> r;
      std::size_t start = 0;
      while (start <= row.size()) {
        const auto comma = row.find(',', start);
        const std::string item = comma == std::string::npos
                                     ? row.substr(start)
                                     : row.substr(start, comma - start);
        try {
          r.push_back(std::stod(item));
        } catch (...) {
          throw config_error(cfg.line_of(section + ".distances"),
                             "malformed distance entry: " + item);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      fe.dist.push_back(std::move(r));
    }
    m = std::move(fe);
  } else if (kind == "tree") {
    WeightedTree t;
    t.d = cfg.get_double(section + ".d", 1.0);
    t.depth = static_cast<int>(cfg.get_int(section + ".depth", 24));
    t.thin_branching = cfg.get_int(section + ".thin_branching", 2);
    t.growth = cfg.get_int(section + ".growth", t.thin_branching);
    t.fat_arity = cfg.get_int(section + ".fat_arity", 0);
    m = t;
  } else if (kind == "product") {
    m = make_product_metric(build_metric(cfg, section + ".left"),
                            build_metric(cfg, section + ".right"));
  } else if (kind == "shaped") {
    ShapeFunction f;
    f.power = cfg.get_double(section + ".shape_power", 1.0);
    f.offset = cfg.get_double(section + ".shape_offset", 0.0);
    m = make_shaped_metric(build_metric(cfg, section + ".base"), f);
  } else {
    throw config_error(line, "unknown metric kind: " + kind);
  }
  try {
    validate(m);
  } catch (const std::exception& e) {
    throw config_error(line, std::string("invalid metric: ") + e.what());
  }
  return m;
}

namespace {

std::vector<Point> parse_point_list(const FlatConfig& cfg, const MetricDescriptor& m,
                                    const std::string& key) {
  const auto items = cfg.get_list(key);
  std::vector<Point> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(parse_point(m, item, cfg.line_of(key)));
  return out;
}

}  // namespace

PayoffDescriptor build_payoff(const FlatConfig& cfg, const MetricDescriptor& metric) {
  if (!cfg.has("payoff.kind"))
    throw config_error(0, "missing [payoff] section with key 'kind'");
  const std::string kind = cfg.get_string("payoff.kind");
  const int line = cfg.line_of("payoff.kind");
  PayoffDescriptor p;
  if (kind == "explicit") {
    const auto items = cfg.get_list("payoff.values");
    ExplicitFinitePayoff ef;
    for (const auto& item : items) {
      try {
        ef.values.push_back(std::stod(item));
      } catch (...) {
        throw config_error(cfg.line_of("payoff.values"), "malformed value: " + item);
      }
    }
    p = std::move(ef);
  } else if (kind == "target") {
    p = DistanceToTargetPayoff{parse_point_list(cfg, metric, "payoff.targets")};
  } else if (kind == "shaped_target") {
    ShapedTargetPayoff st;
    st.targets = parse_point_list(cfg, metric, "payoff.targets");
    st.shape.power = cfg.get_double("payoff.shape_power", 1.0);
    st.shape.offset = cfg.get_double("payoff.shape_offset", 0.0);
    p = std::move(st);
  } else if (kind == "peak") {
    PeakPayoff pk;
    pk.peak = parse_point(metric, cfg.get_string("payoff.peak"),
                          cfg.line_of("payoff.peak"));
    pk.peak_value = cfg.get_double("payoff.mu_star", 1.0);
    p = std::move(pk);
  } else if (kind == "needle") {
    NeedleTowerSpec spec;
    spec.a = cfg.get_double("payoff.a", 0.2);
    spec.b = cfg.get_double("payoff.b", 0.4);
    spec.depth_cap = static_cast<int>(cfg.get_int("payoff.depth_cap", 6));
    spec.seed = static_cast<std::uint64_t>(cfg.get_int("payoff.needle_seed", 1));
    try {
      p = generate_needle_tower(metric, spec);
    } catch (const std::exception& e) {
      throw config_error(line, std::string("needle generation failed: ") + e.what());
    }
  } else if (kind == "needle_file") {
    const std::string path = cfg.get_string("payoff.path");
    std::ifstream in(path, std::ios::binary);
    if (!in)
      throw config_error(cfg.line_of("payoff.path"), "cannot open needle file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    p = needle_from_json(ss.str());
  } else if (kind == "step_anomaly") {
    StepAnomalyPayoff sa;
    sa.peak = parse_point(metric, cfg.get_string("payoff.peak", "0.3"),
                          cfg.line_of("payoff.peak"));
    sa.peak_value = cfg.get_double("payoff.mu_star", 0.4);
    sa.step_at = cfg.get_double("payoff.step_at", 0.7);
    sa.step_height = cfg.get_double("payoff.step_height", 0.5);
    p = std::move(sa);
  } else {
    throw config_error(line, "unknown payoff kind: " + kind);
  }
  try {
    validate_payoff(metric, p);
  } catch (const std::exception& e) {
    throw config_error(line, std::string("invalid payoff: ") + e.what());
  }
  return p;
}

RewardModel build_reward(const FlatConfig& cfg) {
  const std::string kind = cfg.get_string("reward.kind", "bernoulli");
  const int line = cfg.line_of("reward.kind");
  RewardModel r;
  if (kind == "bernoulli") {
    r = BernoulliReward{};
  } else if (kind == "gaussian") {
    r = GaussianNoise{cfg.get_double("reward.sigma", 0.1)};
  } else if (kind == "uniform") {
    r = UniformNoise{cfg.get_double("reward.half_width", 0.25)};
  } else if (kind == "point_mass") {
    PointMassNoise pm;
    if (cfg.has("reward.atoms")) {
      for (const auto& item : cfg.get_list("reward.atoms")) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
          throw config_error(cfg.line_of("reward.atoms"),
                             "atom needs 'value:probability': " + item);
        try {
          pm.atoms.emplace_back(std::stod(item.substr(0, colon)),
                                std::stod(item.substr(colon + 1)));
        } catch (...) {
          throw config_error(cfg.line_of("reward.atoms"), "malformed atom: " + item);
        }
      }
    } else {
      pm.atoms = {{0.0, 1.0}};  // noiseless
    }
    r = std::move(pm);
  } else if (kind == "sharp_peak") {
    r = SharpPeakNoise{cfg.get_double("reward.alpha", 0.5)};
  } else if (kind == "jump") {
    r = JumpNoise{};
  } else if (kind == "heavy_tail") {
    r = HeavyTailNoise{cfg.get_double("reward.scale", 1.0)};
  } else {
    throw config_error(line, "unknown reward kind: " + kind);
  }
  try {
    validate_reward(r);
  } catch (const std::exception& e) {
    throw config_error(line, std::string("invalid reward: ") + e.what());
  }
  return r;
}

namespace {

RadiusRule build_radius_rule(const FlatConfig& cfg) {
  const std::string rule = cfg.get_string("algorithm.rule", "standard");
  const int line = cfg.line_of("algorithm.rule");
  const double c = cfg.get_double("algorithm.radius_constant",
                                  rule == "standard" || rule == "scaled_gaussian" ||
                                          rule == "stoch_bounded" ||
                                          rule == "max_reward_one"
                                      ? 8.0
                                      : 1.0);
  if (rule == "standard") return StandardRule{c};
  if (rule == "scaled_gaussian")
    return ScaledGaussianRule{cfg.get_double("algorithm.sigma", 0.1), c};
  if (rule == "stoch_bounded")
    return StochBoundedRule{cfg.get_double("algorithm.rho", 1.0),
                            cfg.get_double("algorithm.sigma", 0.1), c};
  if (rule == "point_mass") return PointMassRule{c};
  if (rule == "sharp_peak")
    return SharpPeakRule{cfg.get_double("algorithm.alpha", 0.5), c};
  if (rule == "jump") return JumpRule{c};
  if (rule == "max_reward_one") return MaxRewardOneRule{c};
  if (rule == "heavy_tail")
    return HeavyTailRule{cfg.get_double("algorithm.exponent", 1.0 / 9.0), c};
  throw config_error(line, "unknown radius rule: " + rule);
}

FatDecomposition build_decomposition(const FlatConfig& cfg,
                                     const MetricDescriptor& metric) {
  if (!cfg.has("decomposition.d_star"))
    throw config_error(0,
                       "quota algorithm requires a [decomposition] section "
                       "(d_star and levels)");
  FatDecomposition dec;
  dec.d_star = cfg.get_double("decomposition.d_star");
  const auto levels = cfg.get_list("decomposition.levels");
  const int line = cfg.line_of("decomposition.levels");
  for (const auto& spec : levels) {
    if (spec == "tree_fat") {
      const auto* tree = std::get_if<WeightedTree>(&metric);
      if (!tree || tree->fat_arity < 1)
        throw config_error(line, "tree_fat level requires a fat WeightedTree metric");
      dec.levels.push_back(TreeFatLevel{tree->fat_arity});
    } else if (spec.rfind("point ", 0) == 0) {
      dec.levels.push_back(SinglePointLevel{parse_point(metric, spec.substr(6), line)});
    } else {
      throw config_error(line, "unknown decomposition level: " + spec);
    }
  }
  return dec;
}

}  // namespace

AlgorithmConfig build_algorithm(const FlatConfig& cfg, const MetricDescriptor& metric) {
  if (!cfg.has("algorithm.kind"))
    throw config_error(0, "missing [algorithm] section with key 'kind'");
  const std::string kind = cfg.get_string("algorithm.kind");
  const int line = cfg.line_of("algorithm.kind");
  if (kind == "ucb1") return Ucb1Config{};
  if (kind == "naive") {
    NaiveConfig n;
    n.d = cfg.get_double("algorithm.d", 1.0);
    if (n.d < 0.0) throw config_error(line, "naive: d must be >= 0");
    n.net_cap = static_cast<std::size_t>(cfg.get_int("algorithm.net_cap", 50000));
    return n;
  }
  if (kind == "zooming") {
    ZoomingConfig z;
    z.rule = build_radius_rule(cfg);
    return z;
  }
  if (kind == "quota") {
    QuotaConfig q;
    q.d = cfg.get_double("algorithm.d", 2.0);
    q.decomposition = build_decomposition(cfg, metric);
    if (!(q.d > q.decomposition.d_star))
      throw config_error(cfg.line_of("algorithm.d"),
                         "quota: d must exceed decomposition d_star");
    return q;
  }
  throw config_error(line, "unknown algorithm kind: " + kind);
}

ExperimentConfig build_experiment(const FlatConfig& cfg) {
  const std::int64_t schema = cfg.get_int("schema_version", 1);
  if (schema != 1) throw config_error(cfg.line_of("schema_version"),
                                      "unsupported schema_version");
  ExperimentConfig exp;
  exp.instance.metric = build_metric(cfg, "metric");
  exp.instance.payoff = build_payoff(cfg, exp.instance.metric);
  exp.instance.rewards = build_reward(cfg);
  exp.instance.seed = static_cast<std::uint64_t>(cfg.get_int("run.instance_seed", 1));
  exp.algorithm = build_algorithm(cfg, exp.instance.metric);

  exp.horizon = static_cast<std::uint64_t>(cfg.get_int("run.horizon", 1024));
  if (exp.horizon < 2)
    throw config_error(cfg.line_of("run.horizon"), "run.horizon must be >= 2");
  exp.seed_base = static_cast<std::uint64_t>(cfg.get_int("run.seed_base", 1));
  exp.seed_count = static_cast<std::size_t>(cfg.get_int("run.seeds", 2));
  if (exp.seed_count < 1)
    throw config_error(cfg.line_of("run.seeds"), "run.seeds must be >= 1");
  exp.fit_window_fraction = cfg.get_double("run.fit_window", 0.5);
  exp.output_dir = cfg.get_string("output.dir", "out");
  exp.prefix = cfg.get_string("output.prefix", "experiment");

  try {
    validate_instance(exp.instance);
  } catch (const std::exception& e) {
    throw config_error(0, std::string("invalid instance: ") + e.what());
  }
  return exp;
}

}  // namespace lipmab
