#include "parabolab/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "parabolab/envelope.hpp"
#include "parabolab/parallel.hpp"
#include "parabolab/random.hpp"

namespace parabolab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// d2_out: squared distance to the masked nodes outside U
Ball largest_from_field(const Point& x, const CellSet& U, const std::vector<double>& d2_out) {
  const GridSpec& g = U.grid();
  const int n = g.ndim();
  Ball best;
  best.radius = -1.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!U.contains(i)) continue;
    const Point c = g.coords(i);
    const double r = std::min(1.0 - norm(c, n), std::sqrt(d2_out[i]));
    if (r > best.radius && distance(x, c, n) < r) {
      best.center = c;
      best.radius = r;
    }
  }
  return best;
}
}  // namespace

std::vector<double> squared_distance_to(const CellSet& set) {
  const GridSpec& g = set.grid();
  std::vector<double> f(g.size(), kInf);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (set.contains(i)) f[i] = 0.0;
  // kappa = 2 makes kappa/2 |x - y|^2 the plain squared distance
  return min_convolve(g, f, 2.0).value;
}

Ball largest_ball(const Point& x, const RasterSet& U) {
  const GridSpec& g = U.cells.grid();
  const int n = g.ndim();
  const auto xn = g.nearest_node(x);
  if (!xn || !U.cells.contains(*xn) || norm(x, n) >= 1.0)
    throw std::invalid_argument("largest_ball: x is not in U");
  const Ball best = largest_from_field(x, U.cells, squared_distance_to(U.cells.complement()));
  if (best.radius <= 0.0) throw std::invalid_argument("largest_ball: no admissible center");
  return best;
}

bool balls_disjoint(const Ball& a, const Ball& b, int ndim) {
  return distance(a.center, b.center, ndim) >= a.radius + b.radius;
}

std::vector<std::size_t> vitali_select(const std::vector<Ball>& family) {
  if (family.empty()) throw std::invalid_argument("vitali_select: empty family");
  std::vector<std::size_t> order(family.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (family[a].radius != family[b].radius) return family[a].radius > family[b].radius;
    return family[a].center < family[b].center;
  });
  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    bool ok = true;
    for (std::size_t k : kept)
      if (!balls_disjoint(family[i], family[k], 3)) {
        ok = false;
        break;
      }
    if (ok) kept.push_back(i);
  }
  return kept;
}

double unit_sphere_area(int ndim) {
  switch (ndim) {
    case 1: return 2.0;
    case 2: return 2.0 * std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi;
  }
  throw std::invalid_argument("unit_sphere_area: ndim must be 1, 2 or 3");
}

CellSet raster_union(const GridPtr& grid, const std::vector<Ball>& balls, bool closed) {
  const int n = grid->ndim();
  std::vector<std::uint8_t> m(grid->size(), 0);
  for (std::size_t i = 0; i < grid->size(); ++i) {
    if (!grid->in_ball(i)) continue;
    const Point x = grid->coords(i);
    for (const Ball& b : balls) {
      const double d = distance(x, b.center, n);
      if (closed ? d <= b.radius : d < b.radius) {
        m[i] = 1;
        break;
      }
    }
  }
  return CellSet(grid, std::move(m));
}

CoveringVerdict covering_check(const RasterSet& E, const RasterSet& F, double mu, std::size_t ball_samples,
                               std::uint64_t seed) {
  if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("covering_check: need 0 < mu < 1");
  if (E.cells.is_empty()) throw std::invalid_argument("covering_check: E is empty");
  if (!E.cells.subset_of(F.cells)) throw std::invalid_argument("covering_check: E is not contained in F");
  const GridSpec& g = E.cells.grid();
  const int n = g.ndim();
  const double h = g.spacing();

  // candidate balls: random ones, then the enlarged largest balls B^x
  std::vector<Ball> balls(ball_samples);
  parallel_for(ball_samples, [&](std::size_t s) {
    auto rng = split_stream(seed, s);
    Ball b;
    b.radius = uniform(rng, 2.0 * h, 1.0);
    const double R = 1.0 - b.radius;
    for (;;) {
      for (int d = 0; d < n; ++d) b.center[d] = uniform(rng, -R, R);
      if (norm(b.center, n) <= R) break;
    }
    balls[s] = b;
  });

  const CellSet U = E.cells.complement();
  std::vector<std::size_t> u_nodes;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (U.contains(i) && norm(g.coords(i), n) < 1.0) u_nodes.push_back(i);
  if (!u_nodes.empty()) {
    const std::vector<double> d2_out = squared_distance_to(U.complement());
    auto rng = split_stream(seed, ball_samples + 1);
    const std::size_t bx = std::max<std::size_t>(1, ball_samples / 4);
    for (std::size_t s = 0; s < bx; ++s) {
      const Point x = g.coords(u_nodes[rng() % u_nodes.size()]);
      const Ball best = largest_from_field(x, U, d2_out);
      if (best.radius <= 0.0) continue;
      Ball b = best;
      b.radius = std::min(1.0, b.radius + 2.0 * h);
      const double cn = norm(b.center, n);
      if (cn + b.radius > 1.0) {
        const double target = 1.0 - b.radius;
        for (int d = 0; d < n; ++d) b.center[d] = cn > 0.0 ? b.center[d] * target / cn : 0.0;
      }
      balls.push_back(b);
    }
  }

  CoveringVerdict v;
  v.worst_ratio = kInf;
  for (const Ball& b : balls) {
    const auto nodes = ball_nodes(g, b);
    if (nodes.empty()) continue;
    std::size_t inE = 0, inF = 0;
    for (std::size_t i : nodes) {
      inE += E.cells.contains(i);
      inF += F.cells.contains(i);
    }
    if (inE == 0) continue;
    ++v.balls_checked;
    const double ratio = double(inF) / double(nodes.size());
    if (ratio < v.worst_ratio) {
      v.worst_ratio = ratio;
      v.worst_ball = b;
    }
  }
  if (v.balls_checked == 0) v.worst_ratio = 1.0;
  v.hypothesis_ok = v.worst_ratio >= mu;

  v.lhs = measure(F.cells.complement());
  v.rhs = (1.0 - mu / std::pow(5.0, n)) * measure(U);
  v.tolerance = 3.0 * h * unit_sphere_area(n);
  if (v.hypothesis_ok) {
    v.conclusion_checked = true;
    v.conclusion_ok = v.lhs <= v.rhs + v.tolerance;
  }
  return v;
}

std::optional<CoveringInstance> random_covering_instance(const GridPtr& grid, std::uint64_t seed) {
  const int n = grid->ndim();
  auto rng = split_stream(seed, 0);
  std::vector<Ball> eb, fb;
  const int count = 1 + static_cast<int>(rng() % 6);
  for (int i = 0; i < count; ++i) {
    Ball b;
    b.radius = uniform(rng, 0.05, 0.4);
    const double R = 1.0 - b.radius;
    do {
      for (int d = 0; d < n; ++d) b.center[d] = uniform(rng, -R, R);
    } while (norm(b.center, n) > R);
    eb.push_back(b);
    b.radius *= uniform(rng, 1.5, 3.0);
    fb.push_back(b);
  }
  CellSet E = raster_union(grid, eb);
  if (E.is_empty()) return std::nullopt;
  CellSet F = raster_union(grid, fb) | E;
  return CoveringInstance{{std::move(E), true}, {std::move(F), true}, uniform(rng, 0.02, 0.3)};
}

bool vitali_covers(const GridSpec& grid, const std::vector<Ball>& family, const std::vector<std::size_t>& selected) {
  const int n = grid.ndim();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!grid.in_ball(i)) continue;
    const Point x = grid.coords(i);
    bool in_family = false;
    for (const Ball& b : family)
      if (distance(x, b.center, n) < b.radius) {
        in_family = true;
        break;
      }
    if (!in_family) continue;
    bool covered = false;
    for (std::size_t k : selected)
      if (distance(x, family[k].center, n) < 5.0 * family[k].radius) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

}  // namespace parabolab
