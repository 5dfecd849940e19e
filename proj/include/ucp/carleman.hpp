#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ucp/fields.hpp"
#include "ucp/grid.hpp"
#include "ucp/kernel.hpp"

namespace ucp {

inline constexpr double kEtaSwitch = 1e-3;

/// Psi(r) = r exp(int_0^r (e^{-C* eta} - 1) / eta deta), tabulated once on a
/// log-spaced grid as a cubic Hermite interpolant of log(Psi(r) / r).
class PsiProfile {
 public:
  explicit PsiProfile(double c_star, double r_max = 64.0);

  double c_star() const { return c_star_; }
  double operator()(double r) const;
  /// log(Psi(r) / r), the exponent above.
  double log_ratio(double r) const;
  /// Direct evaluation: series below kEtaSwitch, adaptive Gauss-Kronrod beyond.
  double exponent_direct(double r) const;
  /// Largest interpolation error of log(Psi/r) observed at table midpoints.
  double error_bound() const { return error_bound_; }

 private:
  double c_star_;
  double r_min_;
  double r_max_;
  double log_step_;
  std::vector<double> values_;  // exponent at r_min * exp(j * log_step)
  std::vector<double> slopes_;  // d exponent / d log r = e^{-C* r} - 1
  double error_bound_ = 0.0;
};

/// Psi(r) from its defining integral, without the table. For oracles and tests.
double psi_exponent_series(double c_star, double r);

/// The triple (C*, lambda, A(0)) and the weight psi(x, y) = Psi(rho(x, y) / 2 sqrt(lambda)).
class CarlemanWeight {
 public:
  /// Throws Structural unless A0 is symmetric positive definite; Domain unless C* > 1.
  CarlemanWeight(double c_star, double lambda, const Matrix& A0, int dim);

  double c_star() const { return c_star_; }
  double lambda() const { return lambda_; }
  int dim() const { return dim_; }
  const Matrix& A0inv() const { return A0inv_; }
  const PsiProfile& profile() const { return *profile_; }

  /// (A^{-1}(0) x·x + y^2)^(1/2)
  double radius(const Point& x, double y) const;
  double psi(const Point& x, double y) const;
  /// psi_0(r) = Psi(r / 2 sqrt(lambda))
  double psi0(double r) const;
  /// Radius of the probe ball B~^rho_{2 sqrt(lambda) / C*}.
  double probe_radius() const;

 private:
  double c_star_;
  double lambda_;
  int dim_;
  Matrix A0inv_;
  std::shared_ptr<const PsiProfile> profile_;
};

double anisotropic_radius(const CarlemanWeight& w, const Point& x, double y);
double psi_profile(const CarlemanWeight& w, double r);
double weight(const CarlemanWeight& w, const Point& x, double y);

/// max r / Psi(r) over a log grid of (0, 1].
double psi_lower_constant(const PsiProfile& p);

/// max over samples of B~_1 of max(psi / |(x,y)|, |(x,y)| / psi): the constant C_2.
double weight_comparability(const CarlemanWeight& w, std::size_t samples = 4096, std::uint64_t seed = 0);

/// Cutoff h(psi) with quintic-smoothstep ramps: 0 below psi_0(r1), 1 on
/// [psi_0(2 r1), psi_0(R)], 0 above psi_0(3R/2).
struct CutoffSpec {
  double r1 = 0.0;  // sqrt(lambda) r0 / 8
  double R = 0.0;   // sqrt(lambda) / (2 C*)
  double psi_r1 = 0.0;
  double psi_2r1 = 0.0;
  double psi_R = 0.0;
  double psi_3R2 = 0.0;
  double psi_2R = 0.0;

  double h(double s) const;
  double h_d1(double s) const;
  double h_d2(double s) const;
  /// max over the inner ramp of r1 |h'| + r1^2 |h''|, on a dense sample.
  double inner_ramp_bound(int samples = 2001) const;
  /// max over the outer ramp of |h'| + |h''|.
  double outer_ramp_bound(int samples = 2001) const;
};

/// Throws Configuration when r1 > R / 2.
CutoffSpec cutoff_build(const CarlemanWeight& w, double r0);

/// Complex field on a tensor grid whose last axis is y and whose first dim axes are x.
struct XYField {
  TensorGrid grid;
  int dim = 1;
  std::vector<cd> values;

  Point x_at(std::size_t i) const;
  double y_at(std::size_t i) const { return grid.coordinate(i, dim); }
};

/// Square grid (dim + 1 axes, n nodes each) on [-half_width, half_width]^(dim+1).
TensorGrid xy_grid(int dim, double half_width, int n);

/// zeta(x, y) = h(psi(x, y)) at every node.
std::vector<double> sample_cutoff(const CutoffSpec& c, const CarlemanWeight& w, const TensorGrid& xy, int dim);

/// P(w) = d_y^2 w + L(w) - i a d_y w by centred differences at interior nodes
/// (0 on the boundary layer). Throws Structural with fewer than 5 nodes per axis.
XYField operator_apply(const CoefficientSet& cs, const XYField& w);

enum class BumpFamily { Radial, Dipole, Vortex };

const char* to_string(BumpFamily f) noexcept;
BumpFamily parse_bump_family(const std::string& name);

/// b(rho) = (1 - s^2)^3 on the rho-annulus [inner, outer] * probe_radius, with
/// s mapping the annulus to [-1, 1]; times 1, y / rho or (x_1 + i y) / rho.
XYField bump(const CarlemanWeight& w, const TensorGrid& xy, BumpFamily family, double inner = 0.25,
             double outer = 0.75);

struct CarlemanProbe {
  double tau = 0.0;
  double log_lhs = 0.0;  // natural logs; both sides can leave the double range
  double log_rhs = 0.0;
  double ratio = 0.0;    // LHS / RHS
};

/// LHS = int tau psi^{1-2tau} |grad w|^2 + tau^3 psi^{-1-2tau} |w|^2,
/// RHS = int psi^{2-2tau} |P w|^2, summed in log space with long double.
/// Throws Precondition if w does not vanish near the origin and outside the probe ball.
CarlemanProbe carleman_ratio(const CoefficientSet& cs, const CarlemanWeight& w, const XYField& test_w, double tau);

}  // namespace ucp
