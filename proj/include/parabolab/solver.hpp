#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "parabolab/grid.hpp"
#include "parabolab/operators.hpp"

namespace parabolab {

struct SolverConfig {
  int max_iterations = 200;
  double residual_tolerance = 1e-9;
  /// strictly decreasing, last entry >= 1e-8
  std::vector<double> eps_schedule{1e-2, 1e-4, 1e-6, 1e-8};
  /// damping of the policy update, in (0, 1]
  double damping = 1.0;
  std::uint64_t seed = 0;
  /// amplitude of a seeded perturbation of the zero initial guess
  double jitter = 0.0;

  void validate() const;
};

struct SolverLogEntry {
  int iteration = 0;
  int stage = 0;
  double eps_reg = 0.0;
  double energy = 0.0;      ///< p-Laplace only
  double residual = 0.0;    ///< max |dE/du| / h^n, or the sup-norm update for Pucci
  double step = 0.0;        ///< accepted line-search step, or policy changes for Pucci
};

struct SolveResult {
  GridFunction u;
  bool converged = false;
  int iterations = 0;
  double final_residual = 0.0;
  std::string warning;
  std::vector<SolverLogEntry> log;
};

using BoundaryFn = std::function<double(const Point&)>;

/// Minimizes sum over corner cells of h^n/2^n |grad u|_eps^p / p + h^n sum f u
/// over the masked non-ring nodes, every other node of the box held at
/// boundary(x). Each anchor contributes its 2^n one-sided difference cells,
/// so p = 2 is exactly the 5-point Laplacian and the minimizer solves
/// Delta_p u = f. Damped Newton with Armijo backtracking, annealed over
/// cfg.eps_schedule.
SolveResult solve_plaplace(const GridFunction& f, const BoundaryFn& boundary, double p,
                           const SolverConfig& cfg = {});

/// Discrete energy of a full box field (values at every box node) for the
/// given regularization; exposed for tests.
double plaplace_energy(const GridSpec& grid, std::span<const double> box_values,
                       std::span<const double> f_box, double p, double eps_reg);

/// Wide-stencil Pucci operator at an interior node, 2-D: minimum (P-) or
/// maximum (P+) over the axis and diagonal frames of the weighted directional
/// second differences. box_values must be finite on the 3x3 neighbourhood.
double pucci_discrete(const GridSpec& grid, std::span<const double> box_values, std::size_t node,
                      PucciSign sign, const Ellipticity& ell);

/// Solves P^sign_h(u) = f with Dirichlet data by policy iteration. 2-D only.
SolveResult solve_pucci(const GridFunction& f, const BoundaryFn& boundary, PucciSign sign,
                        const Ellipticity& ell, const SolverConfig& cfg = {});

struct ResidualReport {
  double tau = 0.0;
  std::size_t checked = 0;     ///< valid nodes with |grad_h u| > h
  std::size_t violations = 0;
  double worst_margin = 0.0;   ///< max of lower and -upper over checked nodes
  std::vector<std::size_t> locations;  ///< up to 32 violating nodes
};

/// Residual scan on finite-difference derivatives, tau = C h.
ResidualReport residual_report(const GridFunction& u, const GridFunction& f,
                               const SingularExponent& gamma, const Ellipticity& ell, double C = 10.0);

}  // namespace parabolab
