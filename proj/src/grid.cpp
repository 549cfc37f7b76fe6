#include "parabolab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace parabolab {

GridSpec::GridSpec(int ndim, int cells_per_axis) : ndim_(ndim), m_(cells_per_axis) {
  if (ndim < 1 || ndim > 3)
    throw std::invalid_argument("grid: ndim must be 1, 2 or 3, got " + std::to_string(ndim));
  if (cells_per_axis < 3 || cells_per_axis % 2 == 0)
    throw std::invalid_argument("grid: cells_per_axis must be odd and >= 3, got " +
                                std::to_string(cells_per_axis));
  h_ = 2.0 / (m_ - 1);
  size_ = 1;
  for (int d = 0; d < ndim_; ++d) size_ *= static_cast<std::size_t>(m_);
  std::size_t s = 1;
  for (int d = ndim_ - 1; d >= 0; --d) {
    strides_[d] = s;
    s *= static_cast<std::size_t>(m_);
  }
  cell_volume_ = std::pow(h_, ndim_);

  // Integer test |i - c|^2 <= c^2 keeps the mask exact, including the axis
  // points at distance one.
  const long c = (m_ - 1) / 2;
  mask_.assign(size_, 0);
  for (std::size_t idx = 0; idx < size_; ++idx) {
    const Index i = multi_index(idx);
    long r2 = 0;
    for (int d = 0; d < ndim_; ++d) r2 += static_cast<long>(i[d] - c) * (i[d] - c);
    if (r2 <= c * c) {
      mask_[idx] = 1;
      ++mask_count_;
    }
  }
  ring_.assign(size_, 0);
  for (std::size_t idx = 0; idx < size_; ++idx) {
    if (!mask_[idx]) continue;
    for (int d = 0; d < ndim_ && !ring_[idx]; ++d)
      for (int sgn : {-1, 1}) {
        Index delta{0, 0, 0};
        delta[d] = sgn;
        const auto nb = offset(idx, delta);
        if (!nb || !mask_[*nb]) {
          ring_[idx] = 1;
          break;
        }
      }
  }
}

Point GridSpec::origin() const {
  Point o{};
  for (int d = 0; d < ndim_; ++d) o[d] = -1.0;
  return o;
}

Index GridSpec::multi_index(std::size_t idx) const {
  Index i{0, 0, 0};
  for (int d = 0; d < ndim_; ++d) {
    i[d] = static_cast<int>(idx / strides_[d]);
    idx %= strides_[d];
  }
  return i;
}

std::size_t GridSpec::flat_index(const Index& i) const {
  std::size_t idx = 0;
  for (int d = 0; d < ndim_; ++d) idx += static_cast<std::size_t>(i[d]) * strides_[d];
  return idx;
}

Point GridSpec::coords(std::size_t idx) const {
  const Index i = multi_index(idx);
  Point x{};
  for (int d = 0; d < ndim_; ++d) x[d] = -1.0 + i[d] * h_;
  return x;
}

std::optional<std::size_t> GridSpec::offset(std::size_t idx, const Index& delta) const {
  Index i = multi_index(idx);
  for (int d = 0; d < ndim_; ++d) {
    i[d] += delta[d];
    if (i[d] < 0 || i[d] >= m_) return std::nullopt;
  }
  return flat_index(i);
}

std::optional<std::size_t> GridSpec::nearest_node(const Point& x) const {
  Index i{0, 0, 0};
  for (int d = 0; d < ndim_; ++d) {
    const double t = (x[d] + 1.0) / h_;
    const long k = std::lround(t);
    if (k < 0 || k >= m_) return std::nullopt;
    i[d] = static_cast<int>(k);
  }
  return flat_index(i);
}

GridPtr build_ball_grid(int ndim, int cells_per_axis) {
  return std::make_shared<const GridSpec>(ndim, cells_per_axis);
}

// ---------------------------------------------------------------------------

GridFunction::GridFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("GridFunction: null grid");
  if (values_.size() != grid_->size())
    throw std::invalid_argument("GridFunction: value count does not match grid");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (grid_->in_ball(i)) {
      if (!std::isfinite(values_[i]))
        throw std::invalid_argument("GridFunction: non-finite value on a masked node");
    } else {
      values_[i] = kOutside;
    }
  }
}

GridFunction GridFunction::constant(GridPtr grid, double c) {
  const std::size_t n = grid->size();
  return GridFunction(std::move(grid), std::vector<double>(n, c));
}

double GridFunction::sup_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (grid_->in_ball(i)) s = std::max(s, std::abs(values_[i]));
  return s;
}

double GridFunction::min_value() const {
  double s = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (grid_->in_ball(i)) s = std::min(s, values_[i]);
  return s;
}

GridFunction GridFunction::scaled(double a) const {
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * values_[i];
  return GridFunction(grid_, std::move(v));
}

GridFunction GridFunction::negated() const {
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = -values_[i];
  return GridFunction(grid_, std::move(v));
}

// ---------------------------------------------------------------------------

CellSet::CellSet(GridPtr grid, std::vector<std::uint8_t> members)
    : grid_(std::move(grid)), members_(std::move(members)) {
  if (!grid_) throw std::invalid_argument("CellSet: null grid");
  if (members_.size() != grid_->size())
    throw std::invalid_argument("CellSet: member count does not match grid");
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] && !grid_->in_ball(i))
      throw std::invalid_argument("CellSet: member outside the ball mask");
    members_[i] = members_[i] ? 1 : 0;
  }
}

CellSet CellSet::empty(GridPtr grid) {
  const std::size_t n = grid->size();
  return CellSet(std::move(grid), std::vector<std::uint8_t>(n, 0));
}

CellSet CellSet::full(GridPtr grid) {
  std::vector<std::uint8_t> m = grid->mask();
  return CellSet(std::move(grid), std::move(m));
}

std::size_t CellSet::count() const {
  return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), std::uint8_t{1}));
}

CellSet CellSet::operator&(const CellSet& o) const {
  std::vector<std::uint8_t> m(members_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = members_[i] & o.members_[i];
  return CellSet(grid_, std::move(m));
}

CellSet CellSet::operator|(const CellSet& o) const {
  std::vector<std::uint8_t> m(members_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = members_[i] | o.members_[i];
  return CellSet(grid_, std::move(m));
}

CellSet CellSet::minus(const CellSet& o) const {
  std::vector<std::uint8_t> m(members_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = members_[i] && !o.members_[i];
  return CellSet(grid_, std::move(m));
}

CellSet CellSet::complement() const { return full(grid_).minus(*this); }

bool CellSet::subset_of(const CellSet& o) const {
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i] && !o.members_[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------

GridFunction sample_function(const std::function<double(const Point&)>& expr, const GridPtr& grid) {
  std::vector<double> v(grid->size(), kOutside);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!grid->in_ball(i)) continue;
    v[i] = expr(grid->coords(i));
    if (!std::isfinite(v[i]))
      throw std::invalid_argument("sample_function: non-finite value on a masked node");
  }
  return GridFunction(grid, std::move(v));
}

std::optional<NodeDerivatives> fd_at(const GridFunction& u, std::size_t idx) {
  const GridSpec& g = u.grid();
  if (!g.in_ball(idx)) return std::nullopt;
  const int n = g.ndim();
  const double h = g.spacing();
  auto value = [&](const Index& delta) -> std::optional<double> {
    const auto nb = g.offset(idx, delta);
    if (!nb || !g.in_ball(*nb)) return std::nullopt;
    return u[*nb];
  };

  NodeDerivatives out;
  std::array<double, 9> hess{};
  const double c = u[idx];
  for (int i = 0; i < n; ++i) {
    Index ep{0, 0, 0}, em{0, 0, 0};
    ep[i] = 1;
    em[i] = -1;
    const auto up = value(ep);
    const auto um = value(em);
    if (!up || !um) return std::nullopt;
    out.gradient[i] = (*up - *um) / (2.0 * h);
    hess[4 * i] = (*up - 2.0 * c + *um) / (h * h);
    for (int j = i + 1; j < n; ++j) {
      Index pp{0, 0, 0}, pm{0, 0, 0}, mp{0, 0, 0}, mm{0, 0, 0};
      pp[i] = 1, pp[j] = 1;
      pm[i] = 1, pm[j] = -1;
      mp[i] = -1, mp[j] = 1;
      mm[i] = -1, mm[j] = -1;
      const auto vpp = value(pp), vpm = value(pm), vmp = value(mp), vmm = value(mm);
      if (!vpp || !vpm || !vmp || !vmm) return std::nullopt;
      const double mixed = (*vpp - *vpm - *vmp + *vmm) / (4.0 * h * h);
      hess[3 * i + j] = mixed;
      hess[3 * j + i] = mixed;
    }
  }
  out.hessian = SymMatrix(n, hess);
  return out;
}

Derivatives fd_derivatives(const GridFunction& u) {
  const GridSpec& g = u.grid();
  Derivatives d;
  d.gradient.assign(g.size(), Point{});
  d.hessian.assign(g.size(), SymMatrix(g.ndim()));
  d.valid.assign(g.size(), 0);
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const auto nd = fd_at(u, idx);
    if (!nd) continue;
    d.gradient[idx] = nd->gradient;
    d.hessian[idx] = nd->hessian;
    d.valid[idx] = 1;
  }
  return d;
}

double measure(const CellSet& s) { return s.grid().cell_volume() * static_cast<double>(s.count()); }

double ball_measure(const GridSpec& grid) {
  return grid.cell_volume() * static_cast<double>(grid.mask_count());
}

double lp_norm_pow(const GridFunction& g, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("lp_norm: p must be positive");
  const GridSpec& grid = g.grid();
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!grid.in_ball(i)) continue;
    if (g[i] < 0.0) throw std::invalid_argument("lp_norm: negative value");
    if (g[i] > 0.0) s += std::pow(g[i], p);
  }
  return grid.cell_volume() * s;
}

double lp_norm(const GridFunction& g, double p) { return std::pow(lp_norm_pow(g, p), 1.0 / p); }

}  // namespace parabolab
