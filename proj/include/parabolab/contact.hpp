#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "parabolab/envelope.hpp"
#include "parabolab/grid.hpp"

namespace parabolab {

enum class Direction { lower, upper, both };

std::string to_string(Direction d);
Direction parse_direction(const std::string& s);

/// Concave paraboloid -kappa/2 |x - y|^2 + level.
struct Paraboloid {
  double kappa;
  Point vertex;
  double level;

  double operator()(const Point& x, int ndim) const;
};

/// Nonempty set of admissible vertices, a subset of the ball mask.
class VertexSet {
 public:
  explicit VertexSet(CellSet nodes, std::string descriptor = "custom");

  static VertexSet full(const GridPtr& grid);
  /// Masked nodes of the closed ball |x - center| <= radius. Throws if none.
  static VertexSet ball(const GridPtr& grid, const Point& center, double radius);
  static VertexSet single(const GridPtr& grid, std::size_t node);

  const CellSet& nodes() const { return nodes_; }
  const std::string& descriptor() const { return descriptor_; }

 private:
  CellSet nodes_;
  std::string descriptor_;
};

struct TransformResult {
  /// m(y) = min over masked x of u(x) + kappa/2 |x - y|^2, for y in V; +inf elsewhere.
  std::vector<double> m;
  /// realizing contact node per vertex (kNoSource off V)
  std::vector<std::size_t> argmin;
  /// w(x) = max over y in V of m(y) - kappa/2 |x - y|^2, on the mask; NaN elsewhere.
  std::vector<double> w;
  /// vertex realizing w(x)
  std::vector<std::size_t> vertex;
};

TransformResult lower_transform(const GridFunction& u, double kappa, const VertexSet& V);

struct ContactSet {
  CellSet mask;
  Direction direction;
  double kappa;
  double tol;
  std::string vertex_set;
  /// members that sit on the discrete boundary ring
  std::size_t ring_members = 0;

  /// mask without boundary-ring nodes
  CellSet interior() const;
};

/// Default tolerance kappa h^2.
double default_contact_tol(const GridSpec& grid, double kappa);

/// Nodes touched by an opening-kappa paraboloid with vertex in V, from below
/// (lower), from above (upper) or both. tol defaults to kappa h^2.
ContactSet contact_set(const GridFunction& u, double kappa, const VertexSet& V, Direction direction,
                       std::optional<double> tol = std::nullopt);

/// u_eps(x) = min over masked z of u(z) + |z - x|^2 / eps^4.
GridFunction moreau_envelope(const GridFunction& u, double epsilon);

struct VertexMapValue {
  Point y{};
  /// det(I + H/kappa), clamped below at zero
  double jacobian_det = 0.0;
  /// tr(I + H/kappa)
  double jacobian_trace = 0.0;
};

/// y = x + grad u_eps(x) / kappa with finite-difference derivatives.
/// Throws if the node is not Hessian-valid.
VertexMapValue vertex_map(const GridFunction& u_eps, std::size_t node, double kappa);

}  // namespace parabolab
