#include "doctest.h"
#include "lipmab/config.hpp"

using namespace lipmab;

namespace {

const char* kMinimalConfig = R"(
schema_version = 1

[metric]
kind = finite
distances = 0,1;1,0

[payoff]
kind = explicit
values = 0.9;0.1

[reward]
kind = bernoulli

[algorithm]
kind = ucb1

[run]
horizon = 100
seeds = 2
)";

}  // namespace

TEST_CASE("flat config parsing") {
  const auto cfg = FlatConfig::parse_text("a = 1\n[sec]\nx = hello # trailing\ny=2.5\n");
  CHECK(cfg.get_int("a") == 1);
  CHECK(cfg.get_string("sec.x") == "hello");
  CHECK(cfg.get_double("sec.y") == doctest::Approx(2.5));
  CHECK(cfg.get_double("sec.missing", 7.0) == 7.0);
  CHECK(cfg.line_of("sec.y") == 4);
  CHECK_THROWS_AS(FlatConfig::parse_text("novalue\n"), config_error);
  CHECK_THROWS_AS(FlatConfig::parse_text("[open\n"), config_error);
  CHECK_THROWS_AS(FlatConfig::parse_text("a=1\na=2\n"), config_error);
  try {
    FlatConfig::parse_text("x = 1\nbroken line\n");
    FAIL("expected throw");
  } catch (const config_error& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("experiment building") {
  SUBCASE("minimal config") {
    const auto exp = build_experiment(FlatConfig::parse_text(kMinimalConfig));
    CHECK(exp.horizon == 100);
    CHECK(exp.seed_count == 2);
    CHECK(algorithm_name(exp.algorithm) == std::string("ucb1"));
    CHECK(std::holds_alternative<FiniteExplicit>(exp.instance.metric));
  }
  SUBCASE("quota without a decomposition names the missing section") {
    std::string text = kMinimalConfig;
    text.replace(text.find("kind = ucb1"), 11, "kind = quota");
    try {
      build_experiment(FlatConfig::parse_text(text));
      FAIL("expected config_error");
    } catch (const config_error& e) {
      CHECK(std::string(e.what()).find("decomposition") != std::string::npos);
    }
  }
  SUBCASE("metric sections nest for products and shapes") {
    const auto cfg = FlatConfig::parse_text(R"(
[metric]
kind = product
[metric.left]
kind = interval
d = 1
[metric.right]
kind = interval
d = 2
)");
    const auto m = build_metric(cfg, "metric");
    REQUIRE(std::holds_alternative<ProductMetric>(m));
    const Point p = parse_point(m, "0.25|0.5", 0);
    const Point q = parse_point(m, "0.5|0.5", 0);
    CHECK(distance(m, p, q) == doctest::Approx(0.25));
  }
  SUBCASE("tree points pad with zeros") {
    const auto cfg = FlatConfig::parse_text("[metric]\nkind = tree\nd = 1\ndepth = 6\n");
    const auto m = build_metric(cfg, "metric");
    const Point p = parse_point(m, "1:0:1", 0);
    CHECK(std::get<TreeLeaf>(p).path == std::vector<std::uint64_t>{1, 0, 1, 0, 0, 0});
  }
  SUBCASE("radius rules and parameters") {
    std::string text = kMinimalConfig;
    text.replace(text.find("kind = ucb1"), 11,
                 "kind = zooming\nrule = max_reward_one\nradius_constant = 4");
    const auto exp = build_experiment(FlatConfig::parse_text(text));
    const auto& z = std::get<ZoomingConfig>(exp.algorithm);
    const auto& rule = std::get<MaxRewardOneRule>(z.rule);
    CHECK(rule.c == 4.0);
  }
  SUBCASE("invalid horizon is rejected with its line") {
    std::string text = kMinimalConfig;
    text.replace(text.find("horizon = 100"), 13, "horizon = 1");
    try {
      build_experiment(FlatConfig::parse_text(text));
      FAIL("expected config_error");
    } catch (const config_error& e) {
      CHECK(e.line > 0);
      CHECK(std::string(e.what()).find("horizon") != std::string::npos);
    }
  }
  SUBCASE("sweep-style override") {
    auto cfg = FlatConfig::parse_text(kMinimalConfig);
    cfg.set("algorithm.kind", "zooming");
    const auto exp = build_experiment(cfg);
    CHECK(algorithm_name(exp.algorithm) == std::string("zooming"));
  }
}

TEST_CASE("needle payoff from config") {
  const auto cfg = FlatConfig::parse_text(R"(
[metric]
kind = tree
d = 1
depth = 32

[payoff]
kind = needle
a = 0.1
b = 0.25
depth_cap = 2
needle_seed = 3
)");
  const auto m = build_metric(cfg, "metric");
  const auto p = build_payoff(cfg, m);
  const auto& needle = std::get<NeedleTowerPayoff>(p);
  CHECK(needle.chain.size() == 2);
}
