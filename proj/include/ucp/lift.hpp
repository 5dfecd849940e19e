#pragma once

#include <string>
#include <vector>

#include "ucp/fields.hpp"
#include "ucp/kernel.hpp"
#include "ucp/wave.hpp"

namespace ucp {

/// ny equally spaced values on [-1, 1].
std::vector<double> uniform_y_grid(int ny);

/// v_k(x, y) = int_{-1}^{1} u(x, t) phi_k(t + iy) dt and its derivatives, for a
/// solution normalised to rho0 = T = 1. Fields are stored [iy * nodes + f].
struct EllipticLift {
  int k = 1;
  TensorGrid space;
  int dim = 1;
  std::vector<double> y;
  std::vector<cd> v;
  std::vector<cd> vy;
  std::vector<cd> vyy;
  std::vector<cd> vx[kMaxDim];  // centred differences at interior nodes, 0 on the cube boundary

  int intervals = 0;            // knot intervals of the time spline
  int nodes_per_interval = 0;   // Gauss-Legendre nodes per knot interval
  double richardson = 0.0;      // max |v - v_coarse| / 15, coarse = every other knot
  double tolerance = 0.0;
  std::string warning;          // set when richardson exceeds the tolerance

  std::size_t nodes() const { return space.size(); }
  cd at(std::size_t iy, std::size_t f) const { return v[iy * nodes() + f]; }
};

struct ForcingField {
  int k = 1;
  TensorGrid space;
  int dim = 1;
  std::vector<double> y;
  std::vector<cd> F;  // [iy * nodes + f]

  std::size_t nodes() const { return space.size(); }
};

/// Throws Precondition unless ws is normalised, Domain for k < 1 or y outside [-1, 1].
EllipticLift lift(const WaveSolution& ws, const KernelSpec& spec, const std::vector<double>& y_grid,
                  double tolerance = 1e-8, int jobs = 0);

/// F_k = [phi_k(t + iy)(a u + u_t) - phi_k'(t + iy) u] from t = -1 to t = 1.
ForcingField forcing(const WaveSolution& ws, const CoefficientSet& cs, const KernelSpec& spec,
                     const std::vector<double>& y_grid);

/// Discrete L2 norm over B_1 × [-1, 1] of  v_yy - i a v_y + L_h v - F.
double elliptic_residual(const EllipticLift& el, const ForcingField& ff, const CoefficientSet& cs);

/// ||F_k(., y_j)||_{L2(B_1)} for every y_j.
std::vector<double> forcing_norms(const ForcingField& ff);

/// H k mu_k (sqrt(5) |y|)^(k-1).
double forcing_envelope(const KernelSpec& spec, double H, double y);

struct IbpReport {
  double first_error = 0.0;   // max |(-i v_y) - (-int u_t phi + [u phi])|
  double first_budget = 0.0;  // largest nodewise budget
  double first_ratio = 0.0;   // max nodewise error / budget
  double second_error = 0.0;  // max |v_yy - (-int u_tt phi + [u_t phi] - [u phi'])|
  double second_budget = 0.0;
  double second_ratio = 0.0;
};

/// Both integration-by-parts identities, nodewise, against a budget built from
/// Richardson estimates of every quadrature term plus a rounding floor.
/// Throws Precondition without exact u_tt.
IbpReport ibp_identity_check(const WaveSolution& ws, const KernelSpec& spec, const std::vector<double>& y_values);

struct Lemma1Defect {
  int k = 0;
  double defect = 0.0;    // ||v_k(., 0) - u(., 0)||_{L2(B_1)}
  double rate = 0.0;      // log k / sqrt k
  double gamma = 0.0;     // k^(-1/2) log k
  double envelope = 0.0;  // H (gamma + k^(1/4) (1 - gamma^2)^(k/2))
  bool gamma_flag = false;  // gamma >= 1
};

/// Throws Domain for k < 2. H <= 0 means h_bound_of(ws).
Lemma1Defect lemma1_defect(const WaveSolution& ws, const KernelSpec& spec, double H = 0.0);

struct LiftBounds {
  double sup_full = 0.0;          // sup_y ||v(., y)||_{L2(B_1)}
  double envelope_full = 0.0;     // 2^k mu_k H
  bool full_holds = true;
  double sup_small = 0.0;         // sup_y ||v(., y)||_{L2(B_r0)}
  double envelope_small = 0.0;    // 2^k mu_k eps
  double ratio_small = 0.0;       // measured constant
  double caccioppoli = 0.0;       // int over the (x, y) ball of radius r0/2 of |v|^2 + r0^2 |grad v|^2
  double caccioppoli_envelope = 0.0;  // r0 4^k k eps^2 + H^2 k^3 (sqrt5 r0)^(2(k+2))
  double caccioppoli_ratio = 0.0;
};

/// Needs a uniform y grid. Throws Resolution when r0/2 is below the x or y spacing.
LiftBounds lift_bounds_check(const EllipticLift& el, const WaveSolution& ws, const KernelSpec& spec, double r0,
                             double eps, double H);

}  // namespace ucp
