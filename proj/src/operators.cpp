#include "parabolab/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace parabolab {

Ellipticity::Ellipticity(double lambda, double Lambda) : lambda_(lambda), Lambda_(Lambda) {
  if (!(lambda > 0.0) || !(lambda <= Lambda) || !std::isfinite(Lambda))
    throw std::invalid_argument("Ellipticity: need 0 < lambda <= Lambda < inf");
}

SingularExponent::SingularExponent(double gamma) : gamma_(gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw std::invalid_argument("SingularExponent: need 0 <= gamma < 1, got " + std::to_string(gamma));
}

double pucci_eval(const SymMatrix& X, const Ellipticity& ell, PucciSign sign) {
  const Point e = X.eigenvalues();
  double pos = 0.0, neg = 0.0;
  for (int i = 0; i < X.dim(); ++i) {
    if (e[i] > 0.0) pos += e[i];
    else neg += e[i];
  }
  if (sign == PucciSign::plus) return ell.lambda() * neg + ell.Lambda() * pos;
  return ell.lambda() * pos + ell.Lambda() * neg;
}

double gradient_weight(double grad_norm, double gamma) {
  if (gamma == 0.0) return 1.0;
  if (grad_norm == 0.0) return 0.0;
  return std::pow(grad_norm, gamma);
}

Residuals singular_residual(const Point& grad, const SymMatrix& hess, double f_val,
                            const SingularExponent& gamma, const Ellipticity& ell) {
  const double g = norm(grad, hess.dim());
  const double rhs = gradient_weight(g, gamma.value()) * f_val;
  return {pucci_minus(hess, ell) - g - rhs, pucci_plus(hess, ell) + g - rhs};
}

std::optional<double> p_laplace_eval(const Point& grad, const SymMatrix& hess, double p) {
  if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("p_laplace_eval: need 1 < p <= 2");
  const int n = hess.dim();
  const double g = norm(grad, n);
  if (g == 0.0) return std::nullopt;
  Point unit{};
  for (int d = 0; d < n; ++d) unit[d] = grad[d] / g;
  const double contracted = hess.trace() - (2.0 - p) * hess.quadratic_form(unit);
  return std::pow(g, p - 2.0) * contracted;
}

}  // namespace parabolab
