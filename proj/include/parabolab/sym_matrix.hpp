#pragma once

#include <array>
#include <cstddef>

namespace parabolab {

/// Point in up to three dimensions; unused trailing coordinates are zero.
using Point = std::array<double, 3>;

double norm(const Point& x, int ndim);
double distance(const Point& a, const Point& b, int ndim);

/// Dense symmetric n x n matrix, n in {1, 2, 3}.
///
/// Construction from a general square array symmetrizes by averaging the
/// off-diagonal pairs, so callers can feed raw finite-difference data.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n);
  SymMatrix(int n, const std::array<double, 9>& row_major);

  static SymMatrix identity(int n);
  static SymMatrix diagonal(int n, const Point& diag);
  /// v v^T
  static SymMatrix outer(int n, const Point& v);

  int dim() const { return n_; }
  double operator()(int i, int j) const { return a_[3 * i + j]; }
  void set(int i, int j, double value);

  double trace() const;
  double frobenius() const;
  /// Eigenvalues in ascending order; entries past dim() are zero.
  Point eigenvalues() const;
  double determinant() const;
  /// <X v, v>
  double quadratic_form(const Point& v) const;

  SymMatrix operator+(const SymMatrix& o) const;
  SymMatrix operator-(const SymMatrix& o) const;
  SymMatrix operator-() const;
  SymMatrix operator*(double k) const;

 private:
  int n_ = 0;
  std::array<double, 9> a_{};
};

}  // namespace parabolab
