#include "lipmab/point.hpp"

#include <cstdio>

namespace lipmab {

Point make_product_point(Point left, Point right) {
  ProductPoint p;
  p.left = std::make_shared<const Point>(std::move(left));
  p.right = std::make_shared<const Point>(std::move(right));
  return Point{std::move(p)};
}

bool point_equal(const Point& a, const Point& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& pa) -> bool {
        using T = std::decay_t<decltype(pa)>;
        const auto& pb = std::get<T>(b);
        if constexpr (std::is_same_v<T, IntervalPoint>) {
          return pa.x == pb.x;
        } else if constexpr (std::is_same_v<T, FiniteIndex>) {
          return pa.i == pb.i;
        } else if constexpr (std::is_same_v<T, TreeLeaf>) {
          return pa.path == pb.path;
        } else {
          return point_equal(*pa.left, *pb.left) && point_equal(*pa.right, *pb.right);
        }
      },
      a);
}

bool point_less(const Point& a, const Point& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  return std::visit(
      [&](const auto& pa) -> bool {
        using T = std::decay_t<decltype(pa)>;
        const auto& pb = std::get<T>(b);
        if constexpr (std::is_same_v<T, IntervalPoint>) {
          return pa.x < pb.x;
        } else if constexpr (std::is_same_v<T, FiniteIndex>) {
          return pa.i < pb.i;
        } else if constexpr (std::is_same_v<T, TreeLeaf>) {
          return pa.path < pb.path;
        } else {
          if (point_less(*pa.left, *pb.left)) return true;
          if (point_less(*pb.left, *pa.left)) return false;
          return point_less(*pa.right, *pb.right);
        }
      },
      a);
}

std::string to_string(const Point& p) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntervalPoint>) {
          char buf[32];
          std::snprintf(buf, sizeof(buf), "%.17g", v.x);
          return buf;
        } else if constexpr (std::is_same_v<T, FiniteIndex>) {
          return "#" + std::to_string(v.i);
        } else if constexpr (std::is_same_v<T, TreeLeaf>) {
          std::string s;
          for (std::size_t k = 0; k < v.path.size(); ++k) {
            if (k) s += ':';
            s += std::to_string(v.path[k]);
          }
          return s.empty() ? std::string("root") : s;
        } else {
          return "(" + to_string(*v.left) + "|" + to_string(*v.right) + ")";
        }
      },
      p);
}

}  // namespace lipmab
