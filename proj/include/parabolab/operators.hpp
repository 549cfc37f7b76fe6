#pragma once

#include <optional>

#include "parabolab/sym_matrix.hpp"

namespace parabolab {

/// Ellipticity constants, 0 < lambda <= Lambda.
class Ellipticity {
 public:
  Ellipticity(double lambda, double Lambda);
  double lambda() const { return lambda_; }
  double Lambda() const { return Lambda_; }

 private:
  double lambda_;
  double Lambda_;
};

/// Exponent gamma of the gradient weight, 0 <= gamma < 1.
class SingularExponent {
 public:
  explicit SingularExponent(double gamma);
  double value() const { return gamma_; }

 private:
  double gamma_;
};

enum class PucciSign { plus, minus };

/// P+ = lambda * (sum of negative eigenvalues) + Lambda * (sum of positive ones);
/// P- swaps the weights.
double pucci_eval(const SymMatrix& X, const Ellipticity& ell, PucciSign sign);
inline double pucci_plus(const SymMatrix& X, const Ellipticity& ell) {
  return pucci_eval(X, ell, PucciSign::plus);
}
inline double pucci_minus(const SymMatrix& X, const Ellipticity& ell) {
  return pucci_eval(X, ell, PucciSign::minus);
}

/// |g|^gamma with 0^gamma := 0 for gamma > 0 and 0^0 := 1.
double gradient_weight(double grad_norm, double gamma);

struct Residuals {
  double lower;  ///< P-(D2u) - |Du| - |Du|^gamma f, <= 0 on the subsolution side
  double upper;  ///< P+(D2u) + |Du| - |Du|^gamma f, >= 0 on the supersolution side
};

/// Two-sided inequality residuals in the multiplied form, which stays
/// defined where the gradient vanishes.
Residuals singular_residual(const Point& grad, const SymMatrix& hess, double f_val,
                            const SingularExponent& gamma, const Ellipticity& ell);

/// |g|^{p-2} (tr H - (2-p) <H g^, g^>); nullopt at a singular point (g = 0).
/// Throws std::invalid_argument for p outside (1, 2].
std::optional<double> p_laplace_eval(const Point& grad, const SymMatrix& hess, double p);

}  // namespace parabolab
