#pragma once

#include <complex>

namespace ucp {

using cd = std::complex<double>;

/// Orders above this are evaluated in log space.
inline constexpr int kLogSpaceThreshold = 500;

/// phi_k(z) = mu_k (1 - z^2)^k with mu_k = 1 / int_{-1}^{1} (1 - t^2)^k dt.
struct KernelSpec {
  int k = 1;
  double mu = 0.75;
  double log_mu = 0.0;

  static KernelSpec make(int k);
};

/// Exact normalisation through I_k = 2k/(2k+1) I_{k-1}, I_0 = 2.
double mu(int k);
double log_mu(int k);

cd phi(const KernelSpec& spec, cd z);
cd phi_d1(const KernelSpec& spec, cd z);
cd phi_d2(const KernelSpec& spec, cd z);

/// order 0: |phi_k(±1 + iy)| = mu_k (4y^2 + y^4)^(k/2)
/// order 1: |phi_k'(±1 + iy)| = 2k mu_k (1 + y^2)^(1/2) (4y^2 + y^4)^((k-1)/2)
double boundary_magnitude(const KernelSpec& spec, double y, int order);

/// Maximum of |phi_k| over an m×m grid of [-1, 1]^2, compared with 2^k mu_k
/// and with the corner value 5^(k/2) mu_k.
struct SupCheck {
  double sup = 0.0;
  double t = 0.0;
  double y = 0.0;
  double bound_2k = 0.0;      // 2^k mu_k
  double bound_corner = 0.0;  // 5^(k/2) mu_k
  bool within_2k = true;
  bool within_corner = true;
};

SupCheck sup_on_square(const KernelSpec& spec, int m = 201);

}  // namespace ucp
