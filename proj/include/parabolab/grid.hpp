#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "parabolab/sym_matrix.hpp"

namespace parabolab {

/// Value stored at nodes outside the closed unit ball. Quiet NaN, so it
/// never silently participates in arithmetic.
inline constexpr double kOutside = std::numeric_limits<double>::quiet_NaN();

using Index = std::array<int, 3>;

/// Node-centred Cartesian grid over [-1, 1]^n with the closed unit ball
/// marked as the active mask. Node coordinates are x_i = -1 + i h, the
/// origin is always a node, and flat indices are row-major with axis 0
/// the slowest.
class GridSpec {
 public:
  GridSpec(int ndim, int cells_per_axis);

  int ndim() const { return ndim_; }
  int cells_per_axis() const { return m_; }
  double spacing() const { return h_; }
  Point origin() const;
  std::size_t size() const { return size_; }
  std::size_t stride(int axis) const { return strides_[axis]; }
  double cell_volume() const { return cell_volume_; }

  bool in_ball(std::size_t idx) const { return mask_[idx] != 0; }
  const std::vector<std::uint8_t>& mask() const { return mask_; }
  std::size_t mask_count() const { return mask_count_; }

  /// Masked node with at least one axis neighbour outside the mask (or the box).
  bool on_ring(std::size_t idx) const { return ring_[idx] != 0; }

  Index multi_index(std::size_t idx) const;
  std::size_t flat_index(const Index& i) const;
  Point coords(std::size_t idx) const;
  /// Neighbour at integer offset; nullopt when it leaves the box.
  std::optional<std::size_t> offset(std::size_t idx, const Index& delta) const;
  /// Closest node to x (ties toward the lower index); nullopt outside the box.
  std::optional<std::size_t> nearest_node(const Point& x) const;

 private:
  int ndim_;
  int m_;
  double h_;
  std::size_t size_;
  std::array<std::size_t, 3> strides_{};
  double cell_volume_;
  std::vector<std::uint8_t> mask_;
  std::vector<std::uint8_t> ring_;
  std::size_t mask_count_ = 0;
};

using GridPtr = std::shared_ptr<const GridSpec>;

/// Rejects ndim outside {1,2,3} and even or too small cells_per_axis.
GridPtr build_ball_grid(int ndim, int cells_per_axis);

/// Scalar field on a ball grid: finite on masked nodes, kOutside elsewhere.
class GridFunction {
 public:
  GridFunction(GridPtr grid, std::vector<double> values);

  static GridFunction constant(GridPtr grid, double c);

  const GridSpec& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  double operator[](std::size_t idx) const { return values_[idx]; }
  std::span<const double> values() const { return values_; }

  double sup_norm() const;
  double min_value() const;
  GridFunction scaled(double a) const;
  GridFunction negated() const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// Subset of the masked nodes.
class CellSet {
 public:
  CellSet(GridPtr grid, std::vector<std::uint8_t> members);

  static CellSet empty(GridPtr grid);
  static CellSet full(GridPtr grid);

  const GridSpec& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  bool contains(std::size_t idx) const { return members_[idx] != 0; }
  const std::vector<std::uint8_t>& members() const { return members_; }
  std::size_t count() const;
  bool is_empty() const { return count() == 0; }

  CellSet operator&(const CellSet& o) const;
  CellSet operator|(const CellSet& o) const;
  /// this \ o
  CellSet minus(const CellSet& o) const;
  /// mask \ this
  CellSet complement() const;
  bool subset_of(const CellSet& o) const;
  bool operator==(const CellSet& o) const { return members_ == o.members_; }

 private:
  GridPtr grid_;
  std::vector<std::uint8_t> members_;
};

GridFunction sample_function(const std::function<double(const Point&)>& expr, const GridPtr& grid);

struct NodeDerivatives {
  Point gradient{};
  SymMatrix hessian;
};

struct Derivatives {
  std::vector<Point> gradient;
  std::vector<SymMatrix> hessian;
  /// Node whose whole central stencil (axis pairs plus the diagonal pairs
  /// used by mixed partials) lies in the mask.
  std::vector<std::uint8_t> valid;
};

/// Central second-order differences at one node; nullopt if the stencil
/// leaves the mask.
std::optional<NodeDerivatives> fd_at(const GridFunction& u, std::size_t idx);
Derivatives fd_derivatives(const GridFunction& u);

/// h^n times the member count.
double measure(const CellSet& s);
/// Measure of the whole mask, the discrete |B_1|.
double ball_measure(const GridSpec& grid);
/// h^n sum g^p over masked nodes (the p-th power of the norm).
double lp_norm_pow(const GridFunction& g, double p);
double lp_norm(const GridFunction& g, double p);

}  // namespace parabolab
