#include "parabolab/contact.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace parabolab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string to_string(Direction d) {
  switch (d) {
    case Direction::lower: return "lower";
    case Direction::upper: return "upper";
    case Direction::both: return "both";
  }
  return "lower";
}

Direction parse_direction(const std::string& s) {
  if (s == "lower") return Direction::lower;
  if (s == "upper") return Direction::upper;
  if (s == "both") return Direction::both;
  throw std::invalid_argument("direction must be lower, upper or both, got '" + s + "'");
}

double Paraboloid::operator()(const Point& x, int ndim) const {
  const double d = distance(x, vertex, ndim);
  return -0.5 * kappa * d * d + level;
}

VertexSet::VertexSet(CellSet nodes, std::string descriptor)
    : nodes_(std::move(nodes)), descriptor_(std::move(descriptor)) {
  if (nodes_.is_empty()) throw std::invalid_argument("VertexSet: empty vertex set");
}

VertexSet VertexSet::full(const GridPtr& grid) { return VertexSet(CellSet::full(grid), "full"); }

VertexSet VertexSet::ball(const GridPtr& grid, const Point& center, double radius) {
  std::vector<std::uint8_t> m(grid->size(), 0);
  const int n = grid->ndim();
  for (std::size_t i = 0; i < grid->size(); ++i)
    if (grid->in_ball(i) && distance(grid->coords(i), center, n) <= radius) m[i] = 1;
  std::ostringstream os;
  os << "ball(";
  for (int d = 0; d < n; ++d) os << (d ? "," : "") << center[d];
  os << ";" << radius << ")";
  CellSet s(grid, std::move(m));
  if (s.is_empty())
    throw std::invalid_argument("VertexSet: ball " + os.str() + " contains no grid node");
  return VertexSet(std::move(s), os.str());
}

VertexSet VertexSet::single(const GridPtr& grid, std::size_t node) {
  std::vector<std::uint8_t> m(grid->size(), 0);
  if (node >= grid->size() || !grid->in_ball(node))
    throw std::invalid_argument("VertexSet: node outside the ball mask");
  m[node] = 1;
  return VertexSet(CellSet(grid, std::move(m)), "node(" + std::to_string(node) + ")");
}

TransformResult lower_transform(const GridFunction& u, double kappa, const VertexSet& V) {
  if (!(kappa > 0.0)) throw std::invalid_argument("lower_transform: kappa must be positive");
  const GridSpec& g = u.grid();
  if (&V.nodes().grid() != &g && V.nodes().grid().size() != g.size())
    throw std::invalid_argument("lower_transform: vertex set lives on another grid");

  std::vector<double> f(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = g.in_ball(i) ? u[i] : kInf;
  EnvelopeResult first = min_convolve(g, f, kappa);

  TransformResult r;
  r.m.assign(g.size(), kInf);
  r.argmin.assign(g.size(), kNoSource);
  // -m restricted to V, +inf elsewhere; the max-transform is a min-transform of -m
  std::vector<double> neg(g.size(), kInf);
  for (std::size_t y = 0; y < g.size(); ++y) {
    if (!V.nodes().contains(y)) continue;
    r.m[y] = first.value[y];
    r.argmin[y] = first.source[y];
    neg[y] = -first.value[y];
  }
  EnvelopeResult second = min_convolve(g, neg, kappa);
  r.w.assign(g.size(), kOutside);
  r.vertex.assign(g.size(), kNoSource);
  for (std::size_t x = 0; x < g.size(); ++x) {
    if (!g.in_ball(x)) continue;
    r.w[x] = -second.value[x];
    r.vertex[x] = second.source[x];
  }
  return r;
}

CellSet ContactSet::interior() const {
  const GridSpec& g = mask.grid();
  std::vector<std::uint8_t> m(mask.members());
  for (std::size_t i = 0; i < m.size(); ++i)
    if (g.on_ring(i)) m[i] = 0;
  return CellSet(mask.grid_ptr(), std::move(m));
}

double default_contact_tol(const GridSpec& grid, double kappa) {
  return kappa * grid.spacing() * grid.spacing();
}

namespace {

CellSet lower_mask(const GridFunction& u, double kappa, const VertexSet& V, double tol) {
  const GridSpec& g = u.grid();
  const TransformResult t = lower_transform(u, kappa, V);
  // rounding guard: the transforms add terms up to kappa/2 * diam^2 = 2 kappa
  const double guard = 1e-11 * (u.sup_norm() + 2.0 * kappa);
  std::vector<std::uint8_t> m(g.size(), 0);
  for (std::size_t x = 0; x < g.size(); ++x)
    if (g.in_ball(x) && u[x] - t.w[x] <= tol + guard) m[x] = 1;
  return CellSet(u.grid_ptr(), std::move(m));
}

}  // namespace

ContactSet contact_set(const GridFunction& u, double kappa, const VertexSet& V, Direction direction,
                       std::optional<double> tol) {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw std::invalid_argument("contact_set: kappa must be positive and finite");
  const double t = tol.value_or(default_contact_tol(u.grid(), kappa));
  if (!(t >= 0.0)) throw std::invalid_argument("contact_set: tolerance must be non-negative");

  std::optional<CellSet> mask;
  switch (direction) {
    case Direction::lower:
      mask = lower_mask(u, kappa, V, t);
      break;
    case Direction::upper:
      mask = lower_mask(u.negated(), kappa, V, t);
      break;
    case Direction::both:
      mask = lower_mask(u, kappa, V, t) & lower_mask(u.negated(), kappa, V, t);
      break;
  }
  ContactSet cs{*mask, direction, kappa, t, V.descriptor(), 0};
  const GridSpec& g = u.grid();
  for (std::size_t i = 0; i < g.size(); ++i)
    if (cs.mask.contains(i) && g.on_ring(i)) ++cs.ring_members;
  return cs;
}

GridFunction moreau_envelope(const GridFunction& u, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("moreau_envelope: epsilon must be positive");
  const double kappa = 2.0 / std::pow(epsilon, 4);
  if (!std::isfinite(kappa)) throw std::invalid_argument("moreau_envelope: epsilon too small");
  const GridSpec& g = u.grid();
  std::vector<double> f(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = g.in_ball(i) ? u[i] : kInf;
  const EnvelopeResult r = min_convolve(g, f, kappa);
  std::vector<double> v(g.size(), kOutside);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.in_ball(i)) v[i] = std::min(r.value[i], u[i]);
  return GridFunction(u.grid_ptr(), std::move(v));
}

VertexMapValue vertex_map(const GridFunction& u_eps, std::size_t node, double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("vertex_map: kappa must be positive");
  const auto d = fd_at(u_eps, node);
  if (!d) throw std::invalid_argument("vertex_map: node is not Hessian-valid");
  const GridSpec& g = u_eps.grid();
  const int n = g.ndim();
  const Point x = g.coords(node);
  VertexMapValue out;
  for (int i = 0; i < n; ++i) out.y[i] = x[i] + d->gradient[i] / kappa;
  const SymMatrix J = SymMatrix::identity(n) + d->hessian * (1.0 / kappa);
  out.jacobian_det = std::max(0.0, J.determinant());
  out.jacobian_trace = J.trace();
  return out;
}

}  // namespace parabolab
