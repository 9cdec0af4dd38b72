#include "lipmab/metric.hpp"

#include <algorithm>
#include <cmath>

namespace lipmab {

namespace {

constexpr double kSweepSlack = 1e-12;

const char* kind_name(const MetricDescriptor& m) {
  switch (m.index()) {
    case 0: return "interval";
    case 1: return "finite";
    case 2: return "tree";
    case 3: return "product";
    default: return "shaped";
  }
}

[[noreturn]] void throw_kind(const MetricDescriptor& m, const char* what) {
  throw kind_error(std::string("point/descriptor kind mismatch: expected ") + what +
                   " point for " + kind_name(m) + " metric");
}

}  // namespace

MetricDescriptor make_product_metric(MetricDescriptor left, MetricDescriptor right) {
  ProductMetric p;
  p.left = std::make_shared<const MetricDescriptor>(std::move(left));
  p.right = std::make_shared<const MetricDescriptor>(std::move(right));
  return MetricDescriptor{std::move(p)};
}

MetricDescriptor make_shaped_metric(MetricDescriptor base, ShapeFunction shape) {
  ShapedMetric s;
  s.base = std::make_shared<const MetricDescriptor>(std::move(base));
  s.shape = shape;
  return MetricDescriptor{std::move(s)};
}

double tree_level_weight(const WeightedTree& t, int level) {
  return std::exp2(-t.d * static_cast<double>(level));
}

bool tree_is_fat(const WeightedTree& t, std::span<const std::uint64_t> prefix) {
  if (t.fat_arity < 1) return false;
  for (auto e : prefix)
    if (e >= static_cast<std::uint64_t>(t.fat_arity)) return false;
  return true;
}

std::int64_t tree_branching(const WeightedTree& t, std::span<const std::uint64_t> prefix) {
  if (t.fat_arity < 1 || !tree_is_fat(t, prefix)) return t.thin_branching;
  // Fat out-degree x_i solves growth^(i+1) = x_i*m^i + thin*(growth^i - m^i).
  const int i = static_cast<int>(prefix.size());
  std::int64_t gi = 1, gi1 = 1, mi = 1;
  for (int k = 0; k < i; ++k) {
    gi *= t.growth;
    mi *= t.fat_arity;
  }
  gi1 = gi * t.growth;
  return (gi1 - t.thin_branching * (gi - mi)) / mi;
}

void validate(const MetricDescriptor& m) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntervalLd>) {
          if (!(v.d >= 1.0)) throw std::invalid_argument("IntervalLd: d must be >= 1");
        } else if constexpr (std::is_same_v<T, FiniteExplicit>) {
          const std::size_t n = v.dist.size();
          for (std::size_t i = 0; i < n; ++i) {
            if (v.dist[i].size() != n)
              throw std::invalid_argument("FiniteExplicit: matrix not square");
            if (v.dist[i][i] != 0.0)
              throw std::invalid_argument("FiniteExplicit: nonzero diagonal");
            for (std::size_t j = 0; j < n; ++j) {
              if (!(v.dist[i][j] >= 0.0) || v.dist[i][j] > 1.0)
                throw std::invalid_argument("FiniteExplicit: entries must be in [0,1]");
              if (v.dist[i][j] != v.dist[j][i])
                throw std::invalid_argument("FiniteExplicit: matrix not symmetric");
            }
          }
        } else if constexpr (std::is_same_v<T, WeightedTree>) {
          if (!(v.d > 0.0)) throw std::invalid_argument("WeightedTree: d must be > 0");
          if (v.depth < 1 || v.depth > 120)
            throw std::invalid_argument("WeightedTree: depth out of range");
          if (v.thin_branching < 1)
            throw std::invalid_argument("WeightedTree: thin_branching must be >= 1");
          if (v.fat_arity == 0) {
            if (v.growth != v.thin_branching)
              throw std::invalid_argument(
                  "WeightedTree: growth must equal thin_branching without fat nodes");
          } else {
            if (v.fat_arity < 1 || v.fat_arity >= v.growth)
              throw std::invalid_argument("WeightedTree: fat_arity must be in [1, growth)");
            if (v.depth > 30)
              throw std::invalid_argument("WeightedTree: fat trees limited to depth 30");
            // fat out-degrees must stay integral and >= fat_arity at every level
            std::int64_t gi = 1, mi = 1;
            for (int i = 0; i < v.depth; ++i) {
              const std::int64_t num = gi * v.growth - v.thin_branching * (gi - mi);
              if (num % mi != 0 || num / mi < v.fat_arity)
                throw std::invalid_argument("WeightedTree: inconsistent fat branching spec");
              gi *= v.growth;
              mi *= v.fat_arity;
            }
          }
        } else if constexpr (std::is_same_v<T, ProductMetric>) {
          validate(*v.left);
          validate(*v.right);
        } else {
          validate(*v.base);
          if (!(v.shape.power > 0.0) || v.shape.offset < 0.0)
            throw std::invalid_argument("ShapeFunction: power must be > 0, offset >= 0");
        }
      },
      m);
}

void validate_point(const MetricDescriptor& m, const Point& p) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntervalLd>) {
          const auto* ip = std::get_if<IntervalPoint>(&p);
          if (!ip) throw_kind(m, "interval");
          if (ip->x < 0.0 || ip->x > 1.0)
            throw std::invalid_argument("IntervalPoint outside [0,1]");
        } else if constexpr (std::is_same_v<T, FiniteExplicit>) {
          const auto* fp = std::get_if<FiniteIndex>(&p);
          if (!fp) throw_kind(m, "finite-index");
          if (fp->i >= v.dist.size())
            throw std::invalid_argument("FiniteIndex out of range");
        } else if constexpr (std::is_same_v<T, WeightedTree>) {
          const auto* tp = std::get_if<TreeLeaf>(&p);
          if (!tp) throw_kind(m, "tree-leaf");
          if (static_cast<int>(tp->path.size()) != v.depth)
            throw std::invalid_argument("TreeLeaf path length must equal tree depth");
          for (std::size_t k = 0; k < tp->path.size(); ++k) {
            const auto b = tree_branching(v, std::span(tp->path.data(), k));
            if (tp->path[k] >= static_cast<std::uint64_t>(b))
              throw std::invalid_argument("TreeLeaf path entry exceeds branching");
          }
        } else if constexpr (std::is_same_v<T, ProductMetric>) {
          const auto* pp = std::get_if<ProductPoint>(&p);
          if (!pp) throw_kind(m, "product");
          validate_point(*v.left, *pp->left);
          validate_point(*v.right, *pp->right);
        } else {
          validate_point(*v.base, p);
        }
      },
      m);
}

double diameter(const MetricDescriptor& m) {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntervalLd>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, FiniteExplicit>) {
          double d = 0.0;
          for (const auto& row : v.dist)
            for (double x : row) d = std::max(d, x);
          return d;
        } else if constexpr (std::is_same_v<T, WeightedTree>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, ProductMetric>) {
          return diameter(*v.left) + diameter(*v.right);
        } else {
          return v.shape(diameter(*v.base)) - v.shape(0.0);
        }
      },
      m);
}

bool is_quasi_distance(const MetricDescriptor& m) {
  return std::holds_alternative<ShapedMetric>(m);
}

const MetricDescriptor& strip_shape(const MetricDescriptor& m) {
  if (const auto* s = std::get_if<ShapedMetric>(&m)) return *s->base;
  return m;
}

double distance(const MetricDescriptor& m, const Point& p, const Point& q) {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntervalLd>) {
          const auto* a = std::get_if<IntervalPoint>(&p);
          const auto* b = std::get_if<IntervalPoint>(&q);
          if (!a || !b) throw_kind(m, "interval");
          const double e = std::fabs(a->x - b->x);
          return v.d == 1.0 ? e : std::pow(e, 1.0 / v.d);
        } else if constexpr (std::is_same_v<T, FiniteExplicit>) {
          const auto* a = std::get_if<FiniteIndex>(&p);
          const auto* b = std::get_if<FiniteIndex>(&q);
          if (!a || !b) throw_kind(m, "finite-index");
          if (a->i >= v.dist.size() || b->i >= v.dist.size())
            throw std::invalid_argument("FiniteIndex out of range");
          return v.dist[a->i][b->i];
        } else if constexpr (std::is_same_v<T, WeightedTree>) {
          const auto* a = std::get_if<TreeLeaf>(&p);
          const auto* b = std::get_if<TreeLeaf>(&q);
          if (!a || !b) throw_kind(m, "tree-leaf");
          const std::size_t n = std::min(a->path.size(), b->path.size());
          std::size_t cpl = 0;
          while (cpl < n && a->path[cpl] == b->path[cpl]) ++cpl;
          if (cpl == a->path.size() && cpl == b->path.size()) return 0.0;
          return tree_level_weight(v, static_cast<int>(cpl));
        } else if constexpr (std::is_same_v<T, ProductMetric>) {
          const auto* a = std::get_if<ProductPoint>(&p);
          const auto* b = std::get_if<ProductPoint>(&q);
          if (!a || !b) throw_kind(m, "product");
          return distance(*v.left, *a->left, *b->left) +
                 distance(*v.right, *a->right, *b->right);
        } else {
          const double base = distance(*v.base, p, q);
          return v.shape(base) - v.shape(0.0);
        }
      },
      m);
}

namespace {

// ---- interval sweep ---------------------------------------------------

struct IntervalCover {
  double lo, hi;  // open euclidean interval
};

bool witness_sound(const MetricDescriptor& m, const Point& w, std::span<const Ball> balls,
                   const std::optional<Ball>& within) {
  if (within && !(distance(m, w, within->center) < within->radius)) return false;
  for (const auto& b : balls)
    if (distance(m, w, b.center) < b.radius) return false;
  return true;
}

CoverResult interval_query(const MetricDescriptor& m, const IntervalLd& v,
                           std::span<const Ball> balls, const std::optional<Ball>& within) {
  double lo = 0.0, hi = 1.0;
  if (within) {
    const auto* c = std::get_if<IntervalPoint>(&within->center);
    if (!c) throw_kind(m, "interval");
    if (within->radius <= 0.0) return CoverResult{};  // empty region: vacuously covered
    const double eu = std::pow(within->radius, v.d);
    lo = std::max(lo, c->x - eu);
    hi = std::min(hi, c->x + eu);
    if (lo > hi) return CoverResult{};
  }
  std::vector<IntervalCover> covers;
  covers.reserve(balls.size());
  for (const auto& b : balls) {
    const auto* c = std::get_if<IntervalPoint>(&b.center);
    if (!c) throw_kind(m, "interval");
    if (b.radius <= 0.0) continue;
    const double eu = std::isinf(b.radius) ? 2.0 : std::pow(b.radius, v.d);
    covers.push_back({c->x - eu, c->x + eu});
  }
  std::sort(covers.begin(), covers.end(),
            [](const IntervalCover& a, const IntervalCover& b) { return a.lo < b.lo; });

  // Closed gaps of [lo,hi] left open by the union of open intervals. Since
  // balls are open, the right end of every merged run stays uncovered, so
  // abutting intervals leave a degenerate gap at the junction.
  struct Gap {
    double a, b;
  };
  std::vector<Gap> gaps;
  double reach = lo;  // covered so far: (-inf, reach), with `reach` uncovered
  for (const auto& c : covers) {
    if (reach > hi) break;
    if (c.lo >= reach && c.lo >= lo)
      gaps.push_back({std::max(lo, reach), std::min(hi, c.lo)});
    reach = std::max(reach, c.hi);
  }
  if (reach <= hi) gaps.push_back({std::max(lo, reach), hi});

  // Largest gap first, leftmost on ties; every candidate midpoint is
  // re-verified exactly so float noise can't produce an unsound witness.
  std::sort(gaps.begin(), gaps.end(), [](const Gap& x, const Gap& y) {
    const double lx = x.b - x.a, ly = y.b - y.a;
    if (lx != ly) return lx > ly;
    return x.a < y.a;
  });
  for (const auto& g : gaps) {
    if (g.b < g.a - kSweepSlack) continue;
    const double mid = std::clamp(0.5 * (g.a + g.b), 0.0, 1.0);
    const Point w = make_interval_point(mid);
    if (witness_sound(m, w, balls, within)) return CoverResult{w};
    for (double cand : {g.a, g.b}) {
      const Point wc = make_interval_point(std::clamp(cand, 0.0, 1.0));
      if (witness_sound(m, wc, balls, within)) return CoverResult{wc};
    }
  }
  return CoverResult{};
}

// ---- finite scan ------------------------------------------------------

CoverResult finite_query(const MetricDescriptor& m, const FiniteExplicit& v,
                         std::span<const Ball> balls, const std::optional<Ball>& within) {
  std::size_t region_center = 0;
  double region_r = 0.0;
  if (within) {
    const auto* c = std::get_if<FiniteIndex>(&within->center);
    if (!c) throw_kind(m, "finite-index");
    region_center = c->i;
    region_r = within->radius;
  }
  for (std::size_t j = 0; j < v.dist.size(); ++j) {
    if (within && !(v.dist[region_center][j] < region_r)) continue;
    bool covered = false;
    for (const auto& b : balls) {
      const auto* c = std::get_if<FiniteIndex>(&b.center);
      if (!c) throw_kind(m, "finite-index");
      if (v.dist[c->i][j] < b.radius) {
        covered = true;
        break;
      }
    }
    if (!covered) return CoverResult{make_finite_index(j)};
  }
  return CoverResult{};
}

// ---- tree recursion ---------------------------------------------------

struct TreeBallRef {
  const Ball* ball;
  const TreeLeaf* center;
};

struct TreeQueryCtx {
  const WeightedTree* tree;
  std::int64_t max_entry;  // restrict leaves to entries < max_entry (-1: all)
  const TreeLeaf* region_center = nullptr;
  double region_radius = 0.0;
  bool has_region = false;
};

std::uint64_t node_child_limit(const TreeQueryCtx& ctx,
                               std::span<const std::uint64_t> prefix) {
  const std::int64_t b = tree_branching(*ctx.tree, prefix);
  if (ctx.max_entry >= 0) return static_cast<std::uint64_t>(std::min(b, ctx.max_entry));
  return static_cast<std::uint64_t>(b);
}

// Leftmost leaf below `prefix` (entries restricted by max_entry: 0 always valid).
Point leftmost_leaf(const TreeQueryCtx& ctx, std::vector<std::uint64_t> prefix) {
  prefix.resize(static_cast<std::size_t>(ctx.tree->depth), 0);
  return make_tree_leaf(std::move(prefix));
}

std::size_t common_prefix_len(std::span<const std::uint64_t> a,
                              std::span<const std::uint64_t> b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t k = 0;
  while (k < n && a[k] == b[k]) ++k;
  return k;
}

// A leaf inside (subtree(prefix) ∩ region), assuming the intersection is
// nonempty and no ball center lies in the subtree.
Point leaf_in_region(const TreeQueryCtx& ctx, const std::vector<std::uint64_t>& prefix) {
  if (!ctx.has_region) return leftmost_leaf(ctx, prefix);
  const auto& rc = ctx.region_center->path;
  const std::size_t cpl = common_prefix_len(prefix, rc);
  if (cpl < prefix.size()) return leftmost_leaf(ctx, prefix);  // all leaves equidistant
  // Region center below this node: follow it until inside the region's open
  // ball, then pad with zeros.
  int lvl = static_cast<int>(prefix.size());
  std::vector<std::uint64_t> path = prefix;
  while (lvl < ctx.tree->depth &&
         !(tree_level_weight(*ctx.tree, lvl) < ctx.region_radius)) {
    path.push_back(rc[static_cast<std::size_t>(lvl)]);
    ++lvl;
  }
  return leftmost_leaf(ctx, std::move(path));
}

// Returns nullopt if (subtree ∩ region) is covered, else an uncovered leaf.
std::optional<Point> tree_node_query(const TreeQueryCtx& ctx,
                                     std::vector<std::uint64_t>& prefix,
                                     const std::vector<TreeBallRef>& balls) {
  const int level = static_cast<int>(prefix.size());
  const auto& tree = *ctx.tree;

  if (ctx.has_region) {
    const std::size_t cpl = common_prefix_len(prefix, ctx.region_center->path);
    const double mindist =
        cpl == prefix.size() ? 0.0 : tree_level_weight(tree, static_cast<int>(cpl));
    if (!(mindist < ctx.region_radius)) return std::nullopt;  // node outside region
  }

  // Any single ball covering the whole subtree?
  for (const auto& br : balls) {
    const std::size_t cpl = common_prefix_len(prefix, br.center->path);
    const double maxdist = (level == tree.depth && cpl == prefix.size())
                               ? 0.0
                               : tree_level_weight(tree, static_cast<int>(std::min(
                                                             cpl, prefix.size())));
    if (maxdist < br.ball->radius) return std::nullopt;
  }

  if (level == tree.depth) {
    // Uncovered leaf (no ball covers it; region membership checked above).
    return make_tree_leaf(prefix);
  }

  // Split balls whose center lies inside this subtree by child.
  std::vector<std::pair<std::uint64_t, std::size_t>> inside;  // (child, ball idx)
  for (std::size_t i = 0; i < balls.size(); ++i) {
    const auto& c = balls[i].center->path;
    if (common_prefix_len(prefix, c) == prefix.size())
      inside.emplace_back(c[static_cast<std::size_t>(level)], i);
  }
  std::sort(inside.begin(), inside.end());

  const std::uint64_t nchildren = node_child_limit(ctx, prefix);

  // A child with no center inside is entirely uncovered (a ball from outside
  // covering it would have covered this node). Pick the smallest such index
  // whose intersection with the region is nonempty.
  std::size_t pos = 0;
  for (std::uint64_t child = 0; child < nchildren; ++child) {
    while (pos < inside.size() && inside[pos].first < child) ++pos;
    if (pos < inside.size() && inside[pos].first == child) continue;
    prefix.push_back(child);
    bool in_region = true;
    if (ctx.has_region) {
      const std::size_t cpl = common_prefix_len(prefix, ctx.region_center->path);
      const double mindist =
          cpl == prefix.size() ? 0.0 : tree_level_weight(tree, static_cast<int>(cpl));
      in_region = mindist < ctx.region_radius;
    }
    if (in_region) {
      Point w = leaf_in_region(ctx, prefix);
      prefix.pop_back();
      return w;
    }
    prefix.pop_back();
  }

  // Every child has a center inside: recurse in index order.
  std::size_t i = 0;
  while (i < inside.size()) {
    std::size_t j = i;
    while (j < inside.size() && inside[j].first == inside[i].first) ++j;
    std::vector<TreeBallRef> sub;
    sub.reserve(j - i);
    for (std::size_t k = i; k < j; ++k) sub.push_back(balls[inside[k].second]);
    prefix.push_back(inside[i].first);
    auto w = tree_node_query(ctx, prefix, sub);
    prefix.pop_back();
    if (w) return w;
    i = j;
  }
  return std::nullopt;
}

CoverResult tree_query(const MetricDescriptor& m, const WeightedTree& v,
                       std::span<const Ball> balls, const std::optional<Ball>& within,
                       std::int64_t max_entry) {
  TreeQueryCtx ctx;
  ctx.tree = &v;
  ctx.max_entry = max_entry;
  if (within) {
    const auto* c = std::get_if<TreeLeaf>(&within->center);
    if (!c) throw_kind(m, "tree-leaf");
    if (within->radius <= 0.0) return CoverResult{};
    ctx.region_center = c;
    ctx.region_radius = within->radius;
    ctx.has_region = true;
  }
  std::vector<TreeBallRef> refs;
  refs.reserve(balls.size());
  for (const auto& b : balls) {
    const auto* c = std::get_if<TreeLeaf>(&b.center);
    if (!c) throw_kind(m, "tree-leaf");
    if (b.radius <= 0.0) continue;
    refs.push_back({&b, c});
  }
  std::vector<std::uint64_t> prefix;
  prefix.reserve(static_cast<std::size_t>(v.depth));
  auto w = tree_node_query(ctx, prefix, refs);
  if (w) return CoverResult{std::move(*w)};
  return CoverResult{};
}

// ---- generic representative scan (product spaces) ---------------------

CoverResult rep_query(const MetricDescriptor& m, std::span<const Ball> balls,
                      const std::optional<Ball>& within) {
  double min_r = diameter(m);
  for (const auto& b : balls)
    if (b.radius > 0.0) min_r = std::min(min_r, b.radius);
  const double resolution = std::max(min_r / 4.0, 1e-6);
  const auto reps = representative_grid(m, resolution, 1 << 20);
  for (const auto& p : reps) {
    if (within && !(distance(m, p, within->center) < within->radius)) continue;
    bool covered = false;
    for (const auto& b : balls) {
      if (distance(m, p, b.center) < b.radius) {
        covered = true;
        break;
      }
    }
    if (!covered) return CoverResult{p};
  }
  return CoverResult{};
}

}  // namespace

CoverResult covering_query_within(const MetricDescriptor& m, std::span<const Ball> balls,
                                  const std::optional<Ball>& within) {
  return std::visit(
      [&](const auto& v) -> CoverResult {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntervalLd>) {
          return interval_query(m, v, balls, within);
        } else if constexpr (std::is_same_v<T, FiniteExplicit>) {
          return finite_query(m, v, balls, within);
        } else if constexpr (std::is_same_v<T, WeightedTree>) {
          return tree_query(m, v, balls, within, -1);
        } else if constexpr (std::is_same_v<T, ProductMetric>) {
          return rep_query(m, balls, within);
        } else {
          // Transform radii into the base metric: L_f(u,c) < r iff
          // L(u,c) < f^-1(r + f(0)).
          const double f0 = v.shape(0.0);
          std::vector<Ball> base_balls;
          base_balls.reserve(balls.size());
          for (const auto& b : balls) {
            if (b.radius <= 0.0) continue;
            base_balls.push_back({b.center, v.shape.inverse(b.radius + f0)});
          }
          std::optional<Ball> base_within;
          if (within)
            base_within = Ball{within->center, v.shape.inverse(within->radius + f0)};
          return covering_query_within(*v.base, base_balls, base_within);
        }
      },
      m);
}

CoverResult covering_query(const MetricDescriptor& m, std::span<const Ball> balls) {
  return covering_query_within(m, balls, std::nullopt);
}

CoverResult tree_fat_covering_query(const MetricDescriptor& m, std::int64_t max_entry,
                                    std::span<const Ball> balls) {
  const auto* v = std::get_if<WeightedTree>(&m);
  if (!v) throw kind_error("tree_fat_covering_query requires a WeightedTree metric");
  return tree_query(m, *v, balls, std::nullopt, max_entry);
}

Net build_net(const MetricDescriptor& m, double delta, std::size_t cap) {
  if (!(delta > 0.0)) throw std::invalid_argument("build_net: delta must be > 0");
  Net net;
  net.delta = delta;
  std::vector<Ball> balls;
  for (;;) {
    auto q = covering_query(m, balls);
    if (q.covered()) return net;
    if (net.points.size() >= cap)
      throw net_cap_error("build_net: point cap exceeded (delta too small for space)");
    net.points.push_back(*q.witness);
    balls.push_back({net.points.back(), delta});
  }
}

std::vector<Point> max_packing(const MetricDescriptor& m, double delta,
                               const std::optional<Ball>& within, std::size_t stop_at,
                               std::size_t cap) {
  if (!(delta > 0.0)) throw std::invalid_argument("max_packing: delta must be > 0");
  std::vector<Point> centers;
  std::vector<Ball> balls;
  while (centers.size() < stop_at) {
    auto q = covering_query_within(m, balls, within);
    if (q.covered()) break;
    if (centers.size() >= cap)
      throw net_cap_error("max_packing: center cap exceeded");
    centers.push_back(*q.witness);
    balls.push_back({centers.back(), 2.0 * delta});
  }
  return centers;
}

std::size_t covering_number(const MetricDescriptor& m, double r, std::size_t cap) {
  if (!(r > 0.0)) throw std::invalid_argument("covering_number: r must be > 0");
  return build_net(m, r / 2.0, cap).points.size();
}

Point sample_point(const MetricDescriptor& m, Rng& rng) {
  return std::visit(
      [&](const auto& v) -> Point {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntervalLd>) {
          return make_interval_point(rng.u01());
        } else if constexpr (std::is_same_v<T, FiniteExplicit>) {
          if (v.dist.empty()) throw std::invalid_argument("sample_point: empty space");
          return make_finite_index(rng.bounded(v.dist.size()));
        } else if constexpr (std::is_same_v<T, WeightedTree>) {
          std::vector<std::uint64_t> path;
          path.reserve(static_cast<std::size_t>(v.depth));
          for (int lvl = 0; lvl < v.depth; ++lvl) {
            const auto b = tree_branching(v, path);
            path.push_back(rng.bounded(static_cast<std::uint64_t>(b)));
          }
          return make_tree_leaf(std::move(path));
        } else if constexpr (std::is_same_v<T, ProductMetric>) {
          Point l = sample_point(*v.left, rng);
          Point r = sample_point(*v.right, rng);
          return make_product_point(std::move(l), std::move(r));
        } else {
          return sample_point(*v.base, rng);
        }
      },
      m);
}

namespace {

void tree_reps_rec(const WeightedTree& v, int target_level,
                   std::vector<std::uint64_t>& prefix, std::vector<Point>& out,
                   std::size_t cap) {
  if (static_cast<int>(prefix.size()) == target_level) {
    if (out.size() >= cap) throw net_cap_error("representative_grid: cap exceeded");
    std::vector<std::uint64_t> full = prefix;
    full.resize(static_cast<std::size_t>(v.depth), 0);
    out.push_back(make_tree_leaf(std::move(full)));
    return;
  }
  const auto b = tree_branching(v, prefix);
  for (std::int64_t c = 0; c < b; ++c) {
    prefix.push_back(static_cast<std::uint64_t>(c));
    tree_reps_rec(v, target_level, prefix, out, cap);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Point> representative_grid(const MetricDescriptor& m, double resolution,
                                       std::size_t cap) {
  if (!(resolution > 0.0))
    throw std::invalid_argument("representative_grid: resolution must be > 0");
  return std::visit(
      [&](const auto& v) -> std::vector<Point> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntervalLd>) {
          const double step = std::pow(resolution, v.d);
          const double n = std::floor(1.0 / step) + 1.0;
          if (n + 1.0 > static_cast<double>(cap))
            throw net_cap_error("representative_grid: cap exceeded");
          std::vector<Point> out;
          out.reserve(static_cast<std::size_t>(n) + 1);
          for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i)
            out.push_back(make_interval_point(std::min(1.0, i * step)));
          return out;
        } else if constexpr (std::is_same_v<T, FiniteExplicit>) {
          std::vector<Point> out;
          out.reserve(v.dist.size());
          for (std::size_t i = 0; i < v.dist.size(); ++i)
            out.push_back(make_finite_index(i));
          return out;
        } else if constexpr (std::is_same_v<T, WeightedTree>) {
          int level = 0;
          while (level < v.depth && !(tree_level_weight(v, level) <= resolution)) ++level;
          std::vector<Point> out;
          std::vector<std::uint64_t> prefix;
          tree_reps_rec(v, level, prefix, out, cap);
          return out;
        } else if constexpr (std::is_same_v<T, ProductMetric>) {
          const auto left = representative_grid(*v.left, resolution / 2.0, cap);
          const auto right = representative_grid(*v.right, resolution / 2.0, cap);
          if (left.size() * right.size() > cap)
            throw net_cap_error("representative_grid: cap exceeded");
          std::vector<Point> out;
          out.reserve(left.size() * right.size());
          for (const auto& l : left)
            for (const auto& r : right) out.push_back(make_product_point(l, r));
          return out;
        } else {
          return representative_grid(*v.base, v.shape.inverse(resolution + v.shape(0.0)),
                                     cap);
        }
      },
      m);
}

}  // namespace lipmab
