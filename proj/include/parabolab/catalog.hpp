#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "parabolab/grid.hpp"
#include "parabolab/operators.hpp"

namespace parabolab {

enum class CaseKind { quadratic, cone, radial_plaplace, bump };

/// Case selector as written on the command line: "quadratic:1", "cone",
/// "radial_plaplace:1.5", "bump".
struct CaseSpec {
  CaseKind kind = CaseKind::quadratic;
  double param = 1.0;
};

CaseSpec parse_case(std::string_view text);
std::string case_name(const CaseSpec& spec);

/// Analytic field with exact derivatives and the data (f, gamma, lambda,
/// Lambda) it is known to satisfy.
struct TestCase {
  std::string name;
  CaseSpec spec;
  int ndim = 2;
  std::function<double(const Point&)> u;
  std::function<Point(const Point&)> gradient;
  std::function<SymMatrix(const Point&)> hessian;
  std::function<double(const Point&)> f;
  SingularExponent gamma{0.0};
  Ellipticity ell{1.0, 2.0};
  /// False for the cone, whose curvature blows up at the origin.
  bool in_class = true;
  std::string notes;

  GridFunction sample_u(const GridPtr& grid) const { return sample_function(u, grid); }
  GridFunction sample_f(const GridPtr& grid) const { return sample_function(f, grid); }
};

/// Default ellipticity for the quadratic, cone and bump cases.
inline const Ellipticity kDefaultEllipticity{1.0, 2.0};

/// Builds a case and checks the two-sided inequality on a coarse sample.
/// Throws std::invalid_argument for out-of-range parameters.
TestCase make_case(const CaseSpec& spec, int ndim, const Ellipticity& ell = kDefaultEllipticity);

/// c_p = ((p-1)/p) n^{-1/(p-1)}: the coefficient making c_p |x|^{p/(p-1)}
/// solve Delta_p u = 1.
double radial_plaplace_constant(double p, int ndim);

std::vector<std::string> list_cases();

}  // namespace parabolab
