#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "parabolab/contact.hpp"
#include "parabolab/grid.hpp"
#include "parabolab/operators.hpp"

namespace parabolab {

struct WitnessResult {
  std::size_t node = 0;
  Point x{};
  double radius = 0.0;      ///< |x~|
  bool in_contact = false;  ///< x~ in T_K^-
  bool within_half = false; ///< |x~| <= 1/2 + h
};

/// Minimizer of u + K/2 |x|^2 over the mask (ties to the smallest index).
/// Throws if ||u||_inf > 1/16 or K < 1.
WitnessResult nonempty_witness(const GridFunction& u, double K);

struct Ball {
  Point center{};
  double radius = 0.0;
};

/// Masked nodes with |x - center| < radius.
std::vector<std::size_t> ball_nodes(const GridSpec& grid, const Ball& b);

struct DensityScanReport {
  double K = 1.0;
  std::vector<double> M;
  std::size_t sampled = 0;
  std::size_t kept = 0;               ///< balls meeting T_K^-
  std::vector<double> min_ratio;      ///< per M: min |B cap T_KM^-| / |B|
  std::vector<Ball> worst_ball;       ///< per M
  std::uint64_t seed = 0;
};

/// Random balls B_r(x0) in B_1 with r uniform in [4h, 1/2] and x0 uniform in
/// B_{1-r}; balls missing T_K^- are dropped. kept == 0 means nothing to report.
DensityScanReport density_scan(const GridFunction& u, double K, const std::vector<double>& M_candidates,
                               std::size_t ball_samples, std::uint64_t seed);

struct BarrierParams {
  double A = 3.0;
  double K = 1.0;
  double r = 0.25;
  Point x0{};
  Point y1{};
  double C0() const;  ///< e^A
};

struct BarrierResult {
  std::size_t x2_node = 0;
  Point x2{};
  double gap = 0.0;        ///< u(x2) - P(x2)
  double gap_bound = 0.0;  ///< e^A K r^2
  bool gap_ok = false;
  bool inside_half = false;  ///< |x2 - x0| < r/2
};

/// phi(t) = e^A e^{-A t^2} - 1
double barrier_phi(double t, double A);

/// P(x) = -K/2 |x - y1|^2 + u(x1) + K/2 |x1 - y1|^2 must touch u from below
/// at x1 within K h^2; psi = P + K r^2 phi(|x - x0| / r); x2 = grid argmin
/// of u - psi over the closed ball B_r(x0).
BarrierResult barrier_probe(const GridFunction& u, const BarrierParams& params, std::size_t x1_node);

/// Vertex of an opening-K paraboloid touching u from below at node x
/// (the maximizer in the envelope transform), V = closed unit ball.
Point touching_vertex(const GridFunction& u, double K, std::size_t node);

struct VertexCompareResult {
  Ball V_ball;
  std::size_t V_nodes = 0;
  std::size_t contact_nodes = 0;       ///< |T_KM^-(V)| in nodes
  std::size_t outside = 0;             ///< contact nodes outside B_r(x0) or T_KM^-
  std::size_t outside_ring = 0;        ///< of those, on the boundary ring
  bool containment = false;
  double ratio = 0.0;                  ///< |V| / |T_KM^-(V)|
  double det_bound = 0.0;              ///< ((n Lambda + 4) / (n lambda))^n
  double det_max = 0.0;
  std::size_t det_checked = 0;
  std::size_t det_exceptions = 0;
  bool det_ok = false;
  double envelope_epsilon = 0.0;
};

/// V = closed ball of radius r(M-1)/(8M) about y1/M + (M-1) x2/M. Containment
/// T_KM^-(V) in B_r(x0) cap T_KM^- holds when at most 1% of the contact nodes
/// escape and all escapees sit on the boundary ring; the determinant bound
/// is checked on the Moreau envelope u_eps with 2/eps^4 = envelope_factor K M,
/// at contact nodes that are Hessian-valid, with the same 1% allowance.
/// Throws if V contains no node.
VertexCompareResult vertex_measure_compare(const GridFunction& u, double K, double M, const Point& x2,
                                           const Point& y1, double r, const Point& x0,
                                           const Ellipticity& ell, double envelope_factor = 8.0);

struct DensityProbe {
  std::size_t x1_node = 0;
  Point y1{};
  BarrierResult barrier;
  VertexCompareResult compare;
};

/// Full Step 1-3 pipeline on one ball: x1 = the T_K^- node nearest x0, y1 its
/// touching vertex, then barrier_probe and vertex_measure_compare.
/// Throws if B_r(x0) misses T_K^-.
DensityProbe density_probe(const GridFunction& u, double K, double M, const Point& x0, double r,
                           double A, const Ellipticity& ell);

}  // namespace parabolab
