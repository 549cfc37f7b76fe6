#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "parabolab/contact.hpp"
#include "parabolab/grid.hpp"
#include "parabolab/operators.hpp"

namespace parabolab {

/// Measure of {g > t} per threshold. Throws on negative g.
std::vector<double> distribution_measure(const GridFunction& g, std::span<const double> thresholds);

struct DyadicParams {
  double eta;
  double M;
  double p;
};

/// Defaults eta = sqrt(n), M = 2.
DyadicParams default_dyadic(int ndim, double p);

/// Constant for C^{-1} s <= ||g||_p^p <= C (s + |Omega|):
///   C = max((eta M)^p, M^p / (eta^p (M^p - 1))).
/// Layer cake over the shells {eta M^k < g <= eta M^{k+1}}:
///   ||g||^p <= (eta M)^p |Omega| + sum_k (eta M^{k+1})^p |{g > eta M^k}|
///           =  (eta M)^p (|Omega| + s),
///   ||g||^p >= sum_k (eta M^k)^p (|{g > eta M^k}| - |{g > eta M^{k+1}}|)
///           =  eta^p (1 - M^{-p}) s.
double dyadic_constant(const DyadicParams& params);

struct DyadicResult {
  double s = 0.0;          ///< sum_{k>=1} M^{pk} |{g > eta M^k}|
  double norm_pow = 0.0;   ///< ||g||_p^p
  double constant = 0.0;
  double omega = 0.0;      ///< |Omega|, the discrete ball measure
  int levels = 0;          ///< nonempty levels summed
  bool lower_ok = false;   ///< s / C <= ||g||^p
  bool upper_ok = false;   ///< ||g||^p <= C (s + |Omega|)
  bool holds() const { return lower_ok && upper_ok; }
};

/// Sum truncated at the first empty level set.
DyadicResult dyadic_norm(const GridFunction& g, const DyadicParams& params);

struct Ladder {
  double t0 = 1.0;
  double M = 2.0;
  int kmax = 5;
};

struct DecayStep {
  int k = 0;
  double t = 0.0;
  double measure_lower = 0.0;  ///< |B1 \ T_t^-|
  double measure_upper = 0.0;  ///< |B1 \ T_t^+|
  double measure_both = 0.0;   ///< |B1 \ T_t|
};

/// Empirical decay law. Fitted values are surrogates for the unknown
/// dimensional constants, never claims about them.
struct DecayReport {
  Direction direction = Direction::lower;
  Ladder ladder;
  std::vector<DecayStep> steps;
  double sigma = 0.0;
  double theta = 1.0;
  double fitted_M = 2.0;
  double intercept = 0.0;
  double fit_residual = 0.0;  ///< rms residual of the log-log fit
  int fit_first = -1;         ///< first and last k used by the fit
  int fit_last = -1;
  int fit_points = 0;
  bool saturated = false;     ///< every complement empty; sigma = +inf

  double measure(const DecayStep& s) const;
};

/// Contact sets at t_k = t0 M^k, k = 0..kmax, over V = closed ball with the
/// default tolerance; sigma fitted by least squares of log measure against
/// log t over k >= 1 with nonempty complement; theta = M^{-sigma}.
DecayReport decay_profile(const GridFunction& u, Direction direction, const Ladder& ladder);

/// (h^n sum over Hessian-valid nodes of |D2_h u|_F^delta)^{1/delta}.
double hessian_norm_direct(const GridFunction& u, double delta);

struct DecayBound {
  double value = 0.0;
  Ladder ladder;          ///< t0 = 1, M as given, kmax chosen to cover max |D2_h u|_F
  double max_hessian = 0.0;
  std::vector<double> complement;  ///< |B1 \ T_{M^k}| for k = 1..kmax
};

/// (sum_{k>=1} (sqrt(n) M^{k+1})^delta |B1 \ T_{M^k}| + (sqrt(n) M)^delta |B1|)^{1/delta}
DecayBound decay_route_bound(const GridFunction& u, double delta, double M = 2.0);

enum class Route { direct, decay };

double w2delta_estimate(const GridFunction& u, double delta, Route route);

struct RouteComparison {
  double direct = 0.0;
  double decay = 0.0;
  bool consistent = false;  ///< direct <= decay (1 + slack)
};

RouteComparison compare_routes(const GridFunction& u, double delta, double slack = 1e-9);

struct InclusionReport {
  double t = 0.0;
  std::size_t large_hessian = 0;       ///< valid nodes with |D2_h u|_F > sqrt(n) t
  std::size_t violations = 0;          ///< of those, inside T_t (ring nodes are never valid)
  std::vector<std::size_t> locations;  ///< first few violating nodes
};

/// {|D2_h u|_F > sqrt(n) t} on valid nodes against B1 \ T_t (both directions, V = closed ball).
InclusionReport inclusion_check(const GridFunction& u, double t);

struct ScalingParams {
  double a = 1.0;
  double eps_guard = 0.0;
};

struct NormalizationResult {
  ScalingParams scaling;
  double u_sup = 0.0;
  double f_sup = 0.0;
  double u_scaled_sup = 0.0;  ///< ||a u||_inf, at most 1/16
  double f_scaled_sup = 0.0;  ///< ||a^{1-gamma} f||_inf, at most 1
  bool hypothesis_ok = false;
  double seminorm = 0.0;      ///< ||D2 u||_{L^delta}, direct route
  double denominator = 0.0;   ///< ||u|| + ||f||^{1/(1-gamma)} + eps_guard
  double ratio = 0.0;         ///< seminorm / denominator, the empirical constant
};

/// a = 1 / (16 ||u|| + ||f||^{1/(1-gamma)} + eps_guard); the scaled pair
/// (a u, a^{1-gamma} f) satisfies the small-data hypothesis.
NormalizationResult normalize_and_ratio(const GridFunction& u, const GridFunction& f,
                                        const SingularExponent& gamma, double eps_guard, double delta);

}  // namespace parabolab
