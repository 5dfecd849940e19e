#include "ucp/spline.hpp"

#include <cmath>

#include "ucp/error.hpp"

namespace ucp {

namespace {

struct SplineMatrix {
  std::vector<double> sub, diag, sup;
};

SplineMatrix clamped_matrix(std::size_t n) {
  SplineMatrix k{std::vector<double>(n + 1, 1.0), std::vector<double>(n + 1, 4.0), std::vector<double>(n + 1, 1.0)};
  k.diag.front() = 2.0;
  k.diag.back() = 2.0;
  return k;
}

}  // namespace

ClampedSpline::ClampedSpline(double lo, double h, std::vector<double> values, double slope_lo, double slope_hi)
    : lo_(lo), h_(h), y_(std::move(values)) {
  const std::size_t n = y_.size() - 1;
  if (y_.size() < 2 || !(h > 0.0)) throw Error(ErrorKind::Structural, "spline", "a spline needs two knots and h > 0");
  const SplineMatrix k = clamped_matrix(n);
  m_.assign(n + 1, 0.0);
  const double s = 6.0 / (h * h);
  m_[0] = s * (y_[1] - y_[0]) - 6.0 / h * slope_lo;
  for (std::size_t i = 1; i < n; ++i) m_[i] = s * (y_[i + 1] - 2.0 * y_[i] + y_[i - 1]);
  m_[n] = -s * (y_[n] - y_[n - 1]) + 6.0 / h * slope_hi;
  thomas_solve(k.sub, k.diag, k.sup, m_);
}

int ClampedSpline::locate(double t, double& b) const {
  const int n = static_cast<int>(y_.size()) - 1;
  const double pos = (t - lo_) / h_;
  int i = static_cast<int>(std::floor(pos));
  if (i < 0) i = 0;
  if (i > n - 1) i = n - 1;
  b = pos - i;
  return i;
}

double ClampedSpline::operator()(double t) const {
  double b = 0.0;
  const int i = locate(t, b);
  const double a = 1.0 - b;
  return a * y_[i] + b * y_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h_ * h_ / 6.0;
}

double ClampedSpline::derivative(double t) const {
  double b = 0.0;
  const int i = locate(t, b);
  const double a = 1.0 - b;
  return (y_[i + 1] - y_[i]) / h_ - (3.0 * a * a - 1.0) * h_ / 6.0 * m_[i] + (3.0 * b * b - 1.0) * h_ / 6.0 * m_[i + 1];
}

double slope_estimate_lo(std::span<const double> y, double h) {
  if (y.size() < 5) throw Error(ErrorKind::Structural, "spline", "slope estimate needs five knots");
  return (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]) / (12.0 * h);
}

double slope_estimate_hi(std::span<const double> y, double h) {
  const std::size_t n = y.size();
  if (n < 5) throw Error(ErrorKind::Structural, "spline", "slope estimate needs five knots");
  return (25.0 * y[n - 1] - 48.0 * y[n - 2] + 36.0 * y[n - 3] - 16.0 * y[n - 4] + 3.0 * y[n - 5]) / (12.0 * h);
}

std::complex<double> SplineFunctional::apply(std::span<const double> y, double d_lo, double d_hi) const {
  return apply(y.data(), 1, d_lo, d_hi);
}

std::complex<double> SplineFunctional::apply(const double* y, std::size_t stride, double d_lo, double d_hi) const {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double v = y[i * stride];
    re += weights[i].real() * v;
    im += weights[i].imag() * v;
  }
  return std::complex<double>(re, im) + slope_lo * d_lo + slope_hi * d_hi;
}

SplineFunctional SplineFunctional::with_estimated_slopes(double h) const {
  const std::size_t n = weights.size();
  if (n < 5) throw Error(ErrorKind::Structural, "spline", "slope estimate needs five knots");
  SplineFunctional out = *this;
  static constexpr double lo_coef[5] = {-25.0, 48.0, -36.0, 16.0, -3.0};
  for (std::size_t j = 0; j < 5; ++j) {
    out.weights[j] += slope_lo * (lo_coef[j] / (12.0 * h));
    out.weights[n - 1 - j] += slope_hi * (-lo_coef[j] / (12.0 * h));
  }
  out.slope_lo = 0.0;
  out.slope_hi = 0.0;
  return out;
}

void detail::fold_moments(SplineFunctional& f, std::vector<std::complex<double>>& moments, double h) {
  const std::size_t n = moments.size() - 1;
  const SplineMatrix k = clamped_matrix(n);
  thomas_solve(k.sub, k.diag, k.sup, moments);
  const auto& z = moments;
  const double s = 6.0 / (h * h);
  auto& w = f.weights;
  w[0] -= s * z[0];
  w[1] += s * z[0];
  for (std::size_t i = 1; i < n; ++i) {
    w[i - 1] += s * z[i];
    w[i] -= 2.0 * s * z[i];
    w[i + 1] += s * z[i];
  }
  w[n] -= s * z[n];
  w[n - 1] += s * z[n];
  f.slope_lo = -6.0 / h * z[0];
  f.slope_hi = 6.0 / h * z[n];
}

}  // namespace ucp
