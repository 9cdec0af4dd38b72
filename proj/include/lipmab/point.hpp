#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace lipmab {

struct Point;

// Point in [0,1].
struct IntervalPoint {
  double x = 0.0;
};

// Index into an explicitly enumerated finite space.
struct FiniteIndex {
  std::size_t i = 0;
};

// Leaf of a depth-truncated rooted tree, one child index per level.
struct TreeLeaf {
  std::vector<std::uint64_t> path;
};

// Pair of points of the two factor spaces.
struct ProductPoint {
  std::shared_ptr<const Point> left;
  std::shared_ptr<const Point> right;
};

using PointVariant = std::variant<IntervalPoint, FiniteIndex, TreeLeaf, ProductPoint>;

struct Point : PointVariant {
  using PointVariant::PointVariant;
};

inline Point make_interval_point(double x) { return Point{IntervalPoint{x}}; }
inline Point make_finite_index(std::size_t i) { return Point{FiniteIndex{i}}; }
inline Point make_tree_leaf(std::vector<std::uint64_t> path) {
  return Point{TreeLeaf{std::move(path)}};
}
Point make_product_point(Point left, Point right);

bool point_equal(const Point& a, const Point& b);

// Total order: variant kind first, then within-kind comparison
// (ProductPoint recursively). Used for deterministic tie-breaking.
bool point_less(const Point& a, const Point& b);

std::string to_string(const Point& p);

// Thrown when a point's kind does not match a descriptor's space.
struct kind_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace lipmab
