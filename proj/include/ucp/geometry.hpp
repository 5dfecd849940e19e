#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace ucp {

inline constexpr int kMaxDim = 2;

/// A point (or vector) of R^n, n <= 2. Components beyond the dimension are zero.
using Point = std::array<double, kMaxDim>;

/// Real n×n matrix, n <= 2, stored row-major; unused entries are zero.
using Matrix = std::array<std::array<double, kMaxDim>, kMaxDim>;

inline double dot(const Point& a, const Point& b, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Point& a, int dim) { return std::sqrt(dot(a, a, dim)); }

inline Point difference(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1]}; }

inline Matrix identity_matrix(int dim) {
  Matrix m{};
  for (int i = 0; i < dim; ++i) m[i][i] = 1.0;
  return m;
}

inline Matrix scaled(const Matrix& m, double s) {
  Matrix r = m;
  for (auto& row : r)
    for (auto& v : row) v *= s;
  return r;
}

inline Matrix subtract(const Matrix& a, const Matrix& b) {
  Matrix r{};
  for (int i = 0; i < kMaxDim; ++i)
    for (int j = 0; j < kMaxDim; ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

/// x·Mx
inline double quadratic_form(const Matrix& m, const Point& x, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) s += x[i] * m[i][j] * x[j];
  return s;
}

/// Largest |m_ij - m_ji|.
inline double asymmetry(const Matrix& m, int dim) {
  return dim == 2 ? std::abs(m[0][1] - m[1][0]) : 0.0;
}

struct EigenRange {
  double min;
  double max;
};

/// Extreme eigenvalues of a symmetric matrix (closed form for n <= 2).
inline EigenRange symmetric_eigen_range(const Matrix& m, int dim) {
  if (dim == 1) return {m[0][0], m[0][0]};
  const double mean = 0.5 * (m[0][0] + m[1][1]);
  const double half_gap = std::hypot(0.5 * (m[0][0] - m[1][1]), m[0][1]);
  return {mean - half_gap, mean + half_gap};
}

/// Spectral norm of a symmetric matrix.
inline double symmetric_norm(const Matrix& m, int dim) {
  const auto e = symmetric_eigen_range(m, dim);
  return std::max(std::abs(e.min), std::abs(e.max));
}

inline Matrix inverse(const Matrix& m, int dim) {
  Matrix r{};
  if (dim == 1) {
    r[0][0] = 1.0 / m[0][0];
    return r;
  }
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  r[0][0] = m[1][1] / det;
  r[1][1] = m[0][0] / det;
  r[0][1] = -m[0][1] / det;
  r[1][0] = -m[1][0] / det;
  return r;
}

}  // namespace ucp
