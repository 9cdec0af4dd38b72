#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "lipmab/point.hpp"
#include "lipmab/rng.hpp"

namespace lipmab {

// Monotone shape function f(x) = min(1, offset + x^power) on [0,1].
struct ShapeFunction {
  double power = 1.0;   // > 0
  double offset = 0.0;  // >= 0, f(0) = min(1, offset)

  double operator()(double x) const {
    return std::min(1.0, offset + std::pow(x, power));
  }
  // Smallest x with f(x) >= y; values above f(1) map past the diameter.
  double inverse(double y) const {
    if (y <= offset) return 0.0;
    if (y >= (*this)(1.0)) return 2.0;
    return std::pow(y - offset, 1.0 / power);
  }
};

struct MetricDescriptor;

// [0,1] with distance |x - y|^(1/d), d >= 1.
struct IntervalLd {
  double d = 1.0;
};

// Finite space given by its full distance matrix.
struct FiniteExplicit {
  std::vector<std::vector<double>> dist;
};

// Depth-truncated rooted tree; a level-i node has weight 2^(-i*d) and the
// distance between two leaves is the weight of their least common ancestor.
// Thin nodes have out-degree `thin_branching`; when fat_arity >= 1, nodes
// whose path entries are all < fat_arity are "fat" and their out-degree is
// set so level i holds growth^i nodes in total.
struct WeightedTree {
  double d = 1.0;
  int depth = 24;
  std::int64_t thin_branching = 2;
  std::int64_t growth = 2;
  std::int64_t fat_arity = 0;  // 0: plain tree (growth == thin_branching)
};

struct ProductMetric {
  std::shared_ptr<const MetricDescriptor> left;
  std::shared_ptr<const MetricDescriptor> right;
};

// Quasi-distance L_f(u,v) = f(L(u,v)) - f(0) over a base metric.
struct ShapedMetric {
  std::shared_ptr<const MetricDescriptor> base;
  ShapeFunction shape;
};

using MetricVariant =
    std::variant<IntervalLd, FiniteExplicit, WeightedTree, ProductMetric, ShapedMetric>;

struct MetricDescriptor : MetricVariant {
  using MetricVariant::MetricVariant;
};

MetricDescriptor make_product_metric(MetricDescriptor left, MetricDescriptor right);
MetricDescriptor make_shaped_metric(MetricDescriptor base, ShapeFunction shape);

struct Ball {
  Point center;
  double radius = 0.0;
};

struct Net {
  double delta = 0.0;
  std::vector<Point> points;
};

// Result of a covering-oracle query: covered, or a point outside every ball.
struct CoverResult {
  std::optional<Point> witness;
  bool covered() const { return !witness.has_value(); }
};

struct net_cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void validate(const MetricDescriptor& m);
void validate_point(const MetricDescriptor& m, const Point& p);

double diameter(const MetricDescriptor& m);
bool is_quasi_distance(const MetricDescriptor& m);

// Underlying true metric of a shaped quasi-distance; identity otherwise.
const MetricDescriptor& strip_shape(const MetricDescriptor& m);

double distance(const MetricDescriptor& m, const Point& p, const Point& q);

// Exact for IntervalLd (interval sweep), FiniteExplicit and WeightedTree
// (lazy enumeration of subtree representatives); representative-grid
// approximation for Product. `within` restricts the covered set to an open
// ball; points outside it count as covered.
CoverResult covering_query(const MetricDescriptor& m, std::span<const Ball> balls);
CoverResult covering_query_within(const MetricDescriptor& m, std::span<const Ball> balls,
                                  const std::optional<Ball>& within);

// Greedy oracle net: add uncovered witnesses until the radius-delta balls
// cover the space. Throws net_cap_error past `cap` points.
Net build_net(const MetricDescriptor& m, double delta, std::size_t cap = 50000);

// Centers of a maximal collection of disjoint open delta-balls (pairwise
// center distance >= 2*delta) inside `within`, greedily via the oracle.
// Stops early once `stop_at` centers are collected.
std::vector<Point> max_packing(const MetricDescriptor& m, double delta,
                               const std::optional<Ball>& within = std::nullopt,
                               std::size_t stop_at = SIZE_MAX, std::size_t cap = 50000);

// Greedy-net upper-bound surrogate |build_net(m, r/2)| for N(r).
std::size_t covering_number(const MetricDescriptor& m, double r, std::size_t cap = 50000);

Point sample_point(const MetricDescriptor& m, Rng& rng);

// Representative grid at the given metric resolution (finite spaces list all
// points; trees list one leftmost leaf per subtree at the matching level).
std::vector<Point> representative_grid(const MetricDescriptor& m, double resolution,
                                       std::size_t cap);

// Out-degree of a tree node identified by its path prefix.
std::int64_t tree_branching(const WeightedTree& t, std::span<const std::uint64_t> prefix);
bool tree_is_fat(const WeightedTree& t, std::span<const std::uint64_t> prefix);
double tree_level_weight(const WeightedTree& t, int level);

// Covering query restricted to the fat subtree (paths with all entries
// < max_entry); used by the quota algorithm's level oracles.
CoverResult tree_fat_covering_query(const MetricDescriptor& m, std::int64_t max_entry,
                                    std::span<const Ball> balls);

}  // namespace lipmab
