#include "ucp/kernel.hpp"

#include <cmath>

#include "ucp/error.hpp"

namespace ucp {

namespace {

cd ipow(cd w, int n) {
  cd out(1.0, 0.0);
  while (n > 0) {
    if (n & 1) out *= w;
    w *= w;
    n >>= 1;
  }
  return out;
}

/// scale * w^n, in log space for large n.
cd scaled_power(double scale, double log_scale, cd w, int n) {
  if (n <= kLogSpaceThreshold) return scale * ipow(w, n);
  if (w == cd(0.0, 0.0)) return {0.0, 0.0};
  return std::exp(log_scale + static_cast<double>(n) * std::log(w));
}

}  // namespace

double log_mu(int k) {
  if (k < 0) throw Error(ErrorKind::Domain, "kernel", "kernel order must be nonnegative");
  double log_i = std::log(2.0);
  for (int j = 1; j <= k; ++j) log_i += std::log(2.0 * j / (2.0 * j + 1.0));
  return -log_i;
}

double mu(int k) {
  if (k < 0) throw Error(ErrorKind::Domain, "kernel", "kernel order must be nonnegative");
  if (k > kLogSpaceThreshold) return std::exp(log_mu(k));
  double integral = 2.0;
  for (int j = 1; j <= k; ++j) integral *= 2.0 * j / (2.0 * j + 1.0);
  return 1.0 / integral;
}

KernelSpec KernelSpec::make(int k) {
  KernelSpec s;
  s.k = k;
  s.mu = ucp::mu(k);
  s.log_mu = ucp::log_mu(k);
  return s;
}

cd phi(const KernelSpec& spec, cd z) { return scaled_power(spec.mu, spec.log_mu, 1.0 - z * z, spec.k); }

cd phi_d1(const KernelSpec& spec, cd z) {
  const int k = spec.k;
  if (k == 0) return {0.0, 0.0};
  return -2.0 * z * scaled_power(k * spec.mu, spec.log_mu + std::log(static_cast<double>(k)), 1.0 - z * z, k - 1);
}

cd phi_d2(const KernelSpec& spec, cd z) {
  const int k = spec.k;
  if (k == 0) return {0.0, 0.0};
  const cd w = 1.0 - z * z;
  const double lk = spec.log_mu + std::log(static_cast<double>(k));
  cd out = -2.0 * scaled_power(k * spec.mu, lk, w, k - 1);
  if (k >= 2) out += 4.0 * (k - 1) * z * z * scaled_power(k * spec.mu, lk, w, k - 2);
  return out;
}

double boundary_magnitude(const KernelSpec& spec, double y, int order) {
  const int k = spec.k;
  const double q = 4.0 * y * y + y * y * y * y;
  if (order == 0) {
    if (k == 0) return spec.mu;
    if (q == 0.0) return 0.0;
    return std::exp(spec.log_mu + 0.5 * k * std::log(q));
  }
  if (order == 1) {
    if (k == 0) return 0.0;
    const double lead = std::log(2.0 * k) + spec.log_mu + 0.5 * std::log1p(y * y);
    if (k == 1) return std::exp(lead);
    if (q == 0.0) return 0.0;
    return std::exp(lead + 0.5 * (k - 1) * std::log(q));
  }
  throw Error(ErrorKind::Domain, "kernel", "boundary magnitude order must be 0 or 1");
}

SupCheck sup_on_square(const KernelSpec& spec, int m) {
  if (m < 2) throw Error(ErrorKind::Domain, "kernel", "sup grid needs at least two points per side");
  SupCheck out;
  for (int i = 0; i < m; ++i) {
    const double t = -1.0 + 2.0 * i / (m - 1);
    for (int j = 0; j < m; ++j) {
      const double y = -1.0 + 2.0 * j / (m - 1);
      const double v = std::abs(phi(spec, cd(t, y)));
      if (v > out.sup) {
        out.sup = v;
        out.t = t;
        out.y = y;
      }
    }
  }
  out.bound_2k = std::exp(spec.log_mu + spec.k * std::log(2.0));
  out.bound_corner = std::exp(spec.log_mu + 0.5 * spec.k * std::log(5.0));
  out.within_2k = out.sup <= out.bound_2k * (1.0 + 1e-12);
  out.within_corner = out.sup <= out.bound_corner * (1.0 + 1e-12);
  return out;
}

}  // namespace ucp
