#include <cmath>

#include "doctest.h"
#include "lipmab/metric.hpp"

using namespace lipmab;

namespace {

MetricDescriptor interval(double d = 1.0) { return MetricDescriptor{IntervalLd{d}}; }

MetricDescriptor three_point_unit() {
  FiniteExplicit fe;
  fe.dist = {{0.0, 1.0, 1.0}, {1.0, 0.0, 1.0}, {1.0, 1.0, 0.0}};
  return MetricDescriptor{std::move(fe)};
}

MetricDescriptor binary_tree(double d, int depth) {
  WeightedTree t;
  t.d = d;
  t.depth = depth;
  return MetricDescriptor{t};
}

Point leaf(std::vector<std::uint64_t> prefix, int depth) {
  prefix.resize(static_cast<std::size_t>(depth), 0);
  return make_tree_leaf(std::move(prefix));
}

}  // namespace

TEST_CASE("interval distances") {
  const auto m1 = interval(1.0);
  CHECK(distance(m1, make_interval_point(0.2), make_interval_point(0.5)) ==
        doctest::Approx(0.3).epsilon(1e-14));
  const auto m2 = interval(2.0);
  CHECK(distance(m2, make_interval_point(0.0), make_interval_point(0.25)) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(distance(m1, make_finite_index(0), make_interval_point(0.5)),
                  kind_error);
}

TEST_CASE("tree distances are the least-common-ancestor weight") {
  const auto m = binary_tree(1.0, 10);
  const Point a = leaf({0, 1, 0, 1}, 10);
  const Point b = leaf({0, 1, 1, 1}, 10);
  CHECK(distance(m, a, b) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(distance(m, a, a) == 0.0);
  const auto md = binary_tree(0.5, 10);
  CHECK(distance(md, a, b) == doctest::Approx(std::exp2(-1.0)).epsilon(1e-14));
}

TEST_CASE("product and shaped distances") {
  const auto square = make_product_metric(interval(1.0), interval(1.0));
  const Point p = make_product_point(make_interval_point(0.1), make_interval_point(0.4));
  const Point q = make_product_point(make_interval_point(0.3), make_interval_point(0.0));
  CHECK(distance(square, p, q) == doctest::Approx(0.6).epsilon(1e-14));

  const auto shaped = make_shaped_metric(interval(1.0), ShapeFunction{0.5, 0.0});
  CHECK(is_quasi_distance(shaped));
  CHECK(!is_quasi_distance(square));
  CHECK(distance(shaped, make_interval_point(0.0), make_interval_point(0.25)) ==
        doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("metric properties on random samples") {
  std::vector<MetricDescriptor> metrics;
  metrics.push_back(interval(1.0));
  metrics.push_back(interval(3.0));
  metrics.push_back(three_point_unit());
  metrics.push_back(binary_tree(1.0, 12));
  metrics.push_back(make_product_metric(interval(1.0), interval(2.0)));

  for (const auto& m : metrics) {
    Rng rng(42);
    for (int k = 0; k < 1000; ++k) {
      const Point p = sample_point(m, rng);
      const Point q = sample_point(m, rng);
      const Point r = sample_point(m, rng);
      const double pq = distance(m, p, q);
      CHECK(pq >= 0.0);
      CHECK(pq == distance(m, q, p));
      CHECK(distance(m, p, p) == 0.0);
      CHECK(distance(m, p, r) <= pq + distance(m, q, r) + 1e-12);
    }
  }
  // quasi-distance: symmetry and identity only
  const auto shaped = make_shaped_metric(interval(1.0), ShapeFunction{0.5, 0.0});
  Rng rng(7);
  for (int k = 0; k < 1000; ++k) {
    const Point p = sample_point(shaped, rng);
    const Point q = sample_point(shaped, rng);
    CHECK(distance(shaped, p, q) == distance(shaped, q, p));
    CHECK(distance(shaped, p, p) == 0.0);
  }
}

TEST_CASE("covering query on the interval") {
  const auto m = interval(1.0);

  SUBCASE("single spanning ball covers") {
    const std::vector<Ball> balls = {{make_interval_point(0.5), 0.6}};
    CHECK(covering_query(m, balls).covered());
  }
  SUBCASE("two edge balls leave the middle uncovered") {
    const std::vector<Ball> balls = {{make_interval_point(0.0), 0.1},
                                     {make_interval_point(1.0), 0.1}};
    const auto q = covering_query(m, balls);
    REQUIRE(!q.covered());
    // midpoint of the largest uncovered gap
    CHECK(std::get<IntervalPoint>(*q.witness).x == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("empty ball list is uncovered") {
    const auto q = covering_query(m, std::vector<Ball>{});
    REQUIRE(!q.covered());
  }
  SUBCASE("open balls leave their boundary uncovered") {
    // ball around 0.5 with radius 0.5 covers (0,1) but not the endpoints
    const std::vector<Ball> balls = {{make_interval_point(0.5), 0.5}};
    const auto q = covering_query(m, balls);
    REQUIRE(!q.covered());
    const double x = std::get<IntervalPoint>(*q.witness).x;
    CHECK((x == 0.0 || x == 1.0));
  }
}

TEST_CASE("covering query on finite and tree spaces") {
  const auto fin = three_point_unit();
  CHECK(!covering_query(fin, std::vector<Ball>{{make_finite_index(0), 0.5}}).covered());
  CHECK(covering_query(fin, std::vector<Ball>{{make_finite_index(0), 1.5}}).covered());

  const auto tree = binary_tree(1.0, 8);
  // an open ball of radius 0.6 around a leaf covers its level-1 subtree
  // (distances there are <= 1/2), but not the sibling subtree at distance 1
  const std::vector<Ball> balls = {{leaf({0}, 8), 0.6}};
  const auto q = covering_query(tree, balls);
  REQUIRE(!q.covered());
  CHECK(std::get<TreeLeaf>(*q.witness).path[0] == 1);
  const std::vector<Ball> both = {{leaf({0}, 8), 0.6}, {leaf({1}, 8), 0.6}};
  CHECK(covering_query(tree, both).covered());
  // at radius exactly 1/2 the open balls miss the distance-1/2 siblings
  const std::vector<Ball> tight = {{leaf({0}, 8), 0.5}, {leaf({1}, 8), 0.5}};
  CHECK(!covering_query(tree, tight).covered());
}

TEST_CASE("oracle witnesses are sound") {
  std::vector<MetricDescriptor> metrics;
  metrics.push_back(interval(1.0));
  metrics.push_back(interval(2.0));
  metrics.push_back(three_point_unit());
  metrics.push_back(binary_tree(0.5, 10));
  for (const auto& m : metrics) {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Ball> balls;
      const int nb = 1 + static_cast<int>(rng.bounded(6));
      for (int i = 0; i < nb; ++i)
        balls.push_back({sample_point(m, rng), 0.05 + 0.3 * rng.u01()});
      const auto q = covering_query(m, balls);
      if (!q.covered()) {
        for (const auto& b : balls)
          CHECK(distance(m, *q.witness, b.center) >= b.radius);
      }
    }
  }
}

TEST_CASE("greedy nets") {
  const auto m = interval(1.0);

  SUBCASE("delta larger than the diameter needs one point") {
    const Net net = build_net(m, 2.0);
    CHECK(net.points.size() == 1);
  }
  SUBCASE("delta = 1/8 needs at most 9 points and is sound") {
    const Net net = build_net(m, 0.125);
    CHECK(net.points.size() <= 9);
    std::vector<Ball> balls;
    for (const auto& p : net.points) balls.push_back({p, net.delta});
    CHECK(covering_query(m, balls).covered());
    // separation: pairwise distances > delta/2
    for (std::size_t i = 0; i < net.points.size(); ++i)
      for (std::size_t j = i + 1; j < net.points.size(); ++j)
        CHECK(distance(m, net.points[i], net.points[j]) > net.delta / 2.0);
  }
  SUBCASE("all-distinct finite space keeps every point") {
    const Net net = build_net(three_point_unit(), 0.5);
    CHECK(net.points.size() == 3);
  }
  SUBCASE("cap guards non-termination") {
    CHECK_THROWS_AS(build_net(m, 1e-4, 100), net_cap_error);
  }
}

TEST_CASE("net soundness and separation on assorted spaces") {
  std::vector<MetricDescriptor> metrics;
  metrics.push_back(interval(2.0));
  metrics.push_back(binary_tree(1.0, 10));
  metrics.push_back(three_point_unit());
  for (const auto& m : metrics) {
    for (const double delta : {0.5, 0.2, 0.07}) {
      const Net net = build_net(m, delta);
      std::vector<Ball> balls;
      for (const auto& p : net.points) balls.push_back({p, delta});
      CHECK(covering_query(m, balls).covered());
      for (std::size_t i = 0; i < net.points.size(); ++i)
        for (std::size_t j = i + 1; j < net.points.size(); ++j)
          CHECK(distance(m, net.points[i], net.points[j]) > delta / 2.0);
    }
  }
}

TEST_CASE("maximal packings") {
  const auto m = interval(1.0);

  SUBCASE("delta beyond half the diameter packs a single ball") {
    const auto centers = max_packing(m, 0.6);
    CHECK(centers.size() == 1);
  }
  SUBCASE("delta = 0.25 packing is maximal and separated") {
    const auto centers = max_packing(m, 0.25);
    CHECK(centers.size() >= 2);
    for (std::size_t i = 0; i < centers.size(); ++i)
      for (std::size_t j = i + 1; j < centers.size(); ++j)
        CHECK(distance(m, centers[i], centers[j]) >= 0.5);
    // maximality: the doubled balls cover the space
    std::vector<Ball> balls;
    for (const auto& c : centers) balls.push_back({c, 0.5});
    CHECK(covering_query(m, balls).covered());
  }
  SUBCASE("single-point space packs itself") {
    FiniteExplicit fe;
    fe.dist = {{0.0}};
    const auto centers = max_packing(MetricDescriptor{std::move(fe)}, 0.3);
    REQUIRE(centers.size() == 1);
    CHECK(std::get<FiniteIndex>(centers[0]).i == 0);
  }
  SUBCASE("packing restricted to a ball stays inside it") {
    const Ball region{make_interval_point(0.25), 0.2};
    const auto centers = max_packing(m, 0.02, region);
    CHECK(!centers.empty());
    for (const auto& c : centers)
      CHECK(distance(m, c, region.center) < region.radius);
  }
}

TEST_CASE("packing/net duality") {
  std::vector<MetricDescriptor> metrics;
  metrics.push_back(interval(1.0));
  metrics.push_back(binary_tree(1.0, 10));
  metrics.push_back(three_point_unit());
  for (const auto& m : metrics) {
    for (const double delta : {0.4, 0.15}) {
      const auto packing = max_packing(m, delta);
      const Net net = build_net(m, delta / 2.0);
      CHECK(packing.size() <= net.points.size());
    }
  }
}

TEST_CASE("covering number surrogate") {
  CHECK(covering_number(interval(1.0), 0.25) <= 9);
  CHECK(covering_number(interval(1.0), 2.5) == 1);
  // binary tree at r = 2^-3: count subtrees of weight <= r, up to the greedy
  // factor-two surrogate
  const auto tree = binary_tree(1.0, 10);
  const auto n = covering_number(tree, 0.125);
  CHECK(n <= 32);
  CHECK(n >= 8);
  // monotone non-increasing in r up to greedy noise
  CHECK(covering_number(interval(1.0), 0.5) <= covering_number(interval(1.0), 0.1));
}

TEST_CASE("fat tree branching") {
  WeightedTree t;
  t.d = 1.0;
  t.depth = 8;
  t.thin_branching = 2;
  t.growth = 4;
  t.fat_arity = 1;
  const MetricDescriptor m{t};
  validate(m);
  // level-i fat out-degree 2*4^i + 2
  CHECK(tree_branching(t, {}) == 4);
  const std::vector<std::uint64_t> fat1 = {0};
  CHECK(tree_branching(t, fat1) == 10);
  const std::vector<std::uint64_t> fat2 = {0, 0};
  CHECK(tree_branching(t, fat2) == 34);
  const std::vector<std::uint64_t> thin = {1};
  CHECK(tree_branching(t, thin) == 2);
  CHECK(tree_is_fat(t, fat2));
  CHECK(!tree_is_fat(t, thin));

  // fat covering oracle sees only the fat leaf
  const Point fat_leaf = leaf({}, 8);
  const std::vector<Ball> balls = {{fat_leaf, 0.01}};
  CHECK(tree_fat_covering_query(m, 1, balls).covered());
  const std::vector<Ball> miss = {{leaf({1}, 8), 0.01}};
  const auto q = tree_fat_covering_query(m, 1, miss);
  REQUIRE(!q.covered());
  CHECK(point_equal(*q.witness, fat_leaf));
}

TEST_CASE("validation rejects malformed descriptors") {
  CHECK_THROWS_AS(validate(interval(0.5)), std::invalid_argument);
  FiniteExplicit bad;
  bad.dist = {{0.0, 1.0}, {0.5, 0.0}};
  CHECK_THROWS_AS(validate(MetricDescriptor{std::move(bad)}), std::invalid_argument);
  WeightedTree t;
  t.fat_arity = 3;
  t.growth = 2;
  CHECK_THROWS_AS(validate(MetricDescriptor{t}), std::invalid_argument);
  CHECK_THROWS_AS(validate_point(interval(1.0), make_interval_point(1.5)),
                  std::invalid_argument);
}
