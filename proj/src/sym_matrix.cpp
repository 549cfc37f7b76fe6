#include "parabolab/sym_matrix.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace parabolab {

double norm(const Point& x, int ndim) {
  double s = 0.0;
  for (int d = 0; d < ndim; ++d) s += x[d] * x[d];
  return std::sqrt(s);
}

double distance(const Point& a, const Point& b, int ndim) {
  double s = 0.0;
  for (int d = 0; d < ndim; ++d) s += (a[d] - b[d]) * (a[d] - b[d]);
  return std::sqrt(s);
}

SymMatrix::SymMatrix(int n) : n_(n) {
  if (n < 1 || n > 3) throw std::invalid_argument("SymMatrix: dimension must be 1, 2 or 3");
}

SymMatrix::SymMatrix(int n, const std::array<double, 9>& row_major) : SymMatrix(n) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a_[3 * i + j] = 0.5 * (row_major[3 * i + j] + row_major[3 * j + i]);
}

SymMatrix SymMatrix::identity(int n) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) m.a_[4 * i] = 1.0;
  return m;
}

SymMatrix SymMatrix::diagonal(int n, const Point& diag) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) m.a_[4 * i] = diag[i];
  return m;
}

SymMatrix SymMatrix::outer(int n, const Point& v) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.a_[3 * i + j] = v[i] * v[j];
  return m;
}

void SymMatrix::set(int i, int j, double value) {
  a_[3 * i + j] = value;
  a_[3 * j + i] = value;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < n_; ++i) t += a_[4 * i];
  return t;
}

double SymMatrix::frobenius() const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) s += a_[3 * i + j] * a_[3 * i + j];
  return std::sqrt(s);
}

Point SymMatrix::eigenvalues() const {
  Point e{};
  switch (n_) {
    case 1:
      e[0] = a_[0];
      break;
    case 2: {
      // closed form; hypot keeps the discriminant accurate for tiny off-diagonals
      const double mean = 0.5 * (a_[0] + a_[4]);
      const double radius = std::hypot(0.5 * (a_[0] - a_[4]), a_[1]);
      e[0] = mean - radius;
      e[1] = mean + radius;
      break;
    }
    case 3: {
      Eigen::Matrix3d m;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = a_[3 * i + j];
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(m, Eigen::EigenvaluesOnly);
      const auto& ev = solver.eigenvalues();
      e = {ev(0), ev(1), ev(2)};
      break;
    }
    default:
      break;
  }
  return e;
}

double SymMatrix::determinant() const {
  switch (n_) {
    case 1:
      return a_[0];
    case 2:
      return a_[0] * a_[4] - a_[1] * a_[1];
    case 3:
      return a_[0] * (a_[4] * a_[8] - a_[5] * a_[7]) - a_[1] * (a_[3] * a_[8] - a_[5] * a_[6]) +
             a_[2] * (a_[3] * a_[7] - a_[4] * a_[6]);
    default:
      return 0.0;
  }
}

double SymMatrix::quadratic_form(const Point& v) const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) s += a_[3 * i + j] * v[i] * v[j];
  return s;
}

SymMatrix SymMatrix::operator+(const SymMatrix& o) const {
  SymMatrix r = *this;
  for (std::size_t k = 0; k < 9; ++k) r.a_[k] += o.a_[k];
  return r;
}

SymMatrix SymMatrix::operator-(const SymMatrix& o) const {
  SymMatrix r = *this;
  for (std::size_t k = 0; k < 9; ++k) r.a_[k] -= o.a_[k];
  return r;
}

SymMatrix SymMatrix::operator-() const { return *this * -1.0; }

SymMatrix SymMatrix::operator*(double k) const {
  SymMatrix r = *this;
  for (auto& v : r.a_) v *= k;
  return r;
}

}  // namespace parabolab
