#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "parabolab/density.hpp"
#include "parabolab/grid.hpp"

namespace parabolab {

/// Rasterized subset of the ball with its topological flag.
struct RasterSet {
  CellSet cells;
  bool closed = true;
};

/// Squared distance from every box node to the nearest node of `set`
/// (+inf when the set is empty), via the lower-envelope transform of the
/// 0/+inf indicator with kappa = 2.
std::vector<double> squared_distance_to(const CellSet& set);

/// Largest ball inside the open set U that contains x: over masked centers c
/// in U maximize r(c) = min(1 - |c|, dist(c, mask minus U)) subject to
/// |x - c| < r(c); ties go to the smallest node index. Throws if x is not in U.
Ball largest_ball(const Point& x, const RasterSet& U);

/// Greedy Vitali selection: radius descending (ties lexicographic center),
/// keep a ball iff it is disjoint from every kept ball. Returns indices into
/// the family, in selection order.
std::vector<std::size_t> vitali_select(const std::vector<Ball>& family);

/// Open balls are disjoint iff |c1 - c2| >= r1 + r2.
bool balls_disjoint(const Ball& a, const Ball& b, int ndim);

struct CoveringVerdict {
  bool hypothesis_ok = false;
  bool conclusion_checked = false;
  bool conclusion_ok = false;
  std::size_t balls_checked = 0;  ///< sampled balls that meet E
  double worst_ratio = 1.0;       ///< min |B cap F| / |B| over balls meeting E
  Ball worst_ball;
  double lhs = 0.0;               ///< |B1 \ F|
  double rhs = 0.0;               ///< (1 - mu / 5^n) |B1 \ E|
  double tolerance = 0.0;         ///< 3 h |dB1|
};

/// Hypothesis: every sampled ball B in B_1 meeting E has |B cap F| >= mu |B|.
/// Samples are random balls plus the largest balls B^x inside B_1 \ E for random x
/// in B_1 \ E, enlarged by 2h (and pulled inward to stay in B_1) so they meet E.
/// When the hypothesis passes, checks |B1 \ F| <= (1 - mu/5^n)|B1 \ E| + 3h|dB1|.
/// Throws if E is empty, E is not inside F, or mu is outside (0, 1).
CoveringVerdict covering_check(const RasterSet& E, const RasterSet& F, double mu, std::size_t ball_samples,
                               std::uint64_t seed);

/// |dB_1| for n = 1, 2, 3.
double unit_sphere_area(int ndim);

/// Union of balls rasterized onto the mask.
CellSet raster_union(const GridPtr& grid, const std::vector<Ball>& balls, bool closed = true);

struct CoveringInstance {
  RasterSet E;
  RasterSet F;
  double mu = 0.0;
};

/// Seeded instance: E a union of 1-6 closed balls, F the union of the same
/// balls dilated by factors in [1.5, 3] (so E is inside F), mu in [0.02, 0.3].
/// Returns nullopt if E rasterizes to no node.
std::optional<CoveringInstance> random_covering_instance(const GridPtr& grid, std::uint64_t seed);

/// Every node of a family ball lies in the 5-fold dilation of some selected ball.
bool vitali_covers(const GridSpec& grid, const std::vector<Ball>& family, const std::vector<std::size_t>& selected);

}  // namespace parabolab
