#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "ucp/quadrature.hpp"

namespace ucp {

/// Solves a tridiagonal system in place (Thomas algorithm). sub[0] and sup[n-1]
/// are ignored.
template <class T>
void thomas_solve(const std::vector<double>& sub, std::vector<double> diag, const std::vector<double>& sup,
                  std::vector<T>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = sub[i] / diag[i - 1];
    diag[i] -= m * sup[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

/// Cubic spline through uniform knots lo + i h (i = 0..n) with prescribed end slopes.
class ClampedSpline {
 public:
  ClampedSpline(double lo, double h, std::vector<double> values, double slope_lo, double slope_hi);

  double operator()(double t) const;
  double derivative(double t) const;

 private:
  int locate(double t, double& a) const;

  double lo_;
  double h_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the knots
};

/// Fourth-order one-sided slope estimates from the first / last five knot values.
double slope_estimate_lo(std::span<const double> y, double h);
double slope_estimate_hi(std::span<const double> y, double h);

/// The linear map (knot values, end slopes) -> int s(t) g(t) dt of the clamped
/// spline s, stored as weights.
struct SplineFunctional {
  std::vector<std::complex<double>> weights;
  std::complex<double> slope_lo{};
  std::complex<double> slope_hi{};

  std::complex<double> apply(std::span<const double> y, double d_lo, double d_hi) const;
  /// Strided variant: y[i * stride].
  std::complex<double> apply(const double* y, std::size_t stride, double d_lo, double d_hi) const;

  /// Folds the slope terms into the knot weights using slope_estimate_lo/hi.
  SplineFunctional with_estimated_slopes(double h) const;
};

namespace detail {
/// Turns interval moments into knot weights: adds D^T K^-1 moments to the
/// weights, where K M = D y + (slope terms) defines the spline curvatures.
void fold_moments(SplineFunctional& f, std::vector<std::complex<double>>& moments, double h);
}  // namespace detail

/// M functionals at once for g(t) returning std::array<complex, M>. Each knot
/// interval is integrated with `rule`, so the result is exact (up to rounding)
/// when g is a polynomial of degree <= 2 * nodes - 4.
template <std::size_t M, class G>
std::array<SplineFunctional, M> spline_functionals(double lo, double h, int intervals, const GaussRule& rule, G&& g) {
  using cdv = std::complex<double>;
  const std::size_t n = static_cast<std::size_t>(intervals);
  std::array<SplineFunctional, M> out;
  std::array<std::vector<cdv>, M> mom;
  for (std::size_t m = 0; m < M; ++m) {
    out[m].weights.assign(n + 1, cdv{});
    mom[m].assign(n + 1, cdv{});
  }
  const double c6 = h * h / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double b = 0.5 * (1.0 + rule.nodes[q]);
      const double a = 1.0 - b;
      const double wq = 0.5 * rule.weights[q] * h;
      const auto gv = g(lo + (static_cast<double>(i) + b) * h);
      const double ma = (a * a * a - a) * c6;
      const double mb = (b * b * b - b) * c6;
      for (std::size_t m = 0; m < M; ++m) {
        const cdv v = wq * gv[m];
        out[m].weights[i] += a * v;
        out[m].weights[i + 1] += b * v;
        mom[m][i] += ma * v;
        mom[m][i + 1] += mb * v;
      }
    }
  }
  for (std::size_t m = 0; m < M; ++m) detail::fold_moments(out[m], mom[m], h);
  return out;
}

}  // namespace ucp
