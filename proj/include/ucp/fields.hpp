#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ucp/geometry.hpp"

namespace ucp {

/// Coefficients of  u_tt + a u_t - (div(A grad u) + b·grad u + c u) = 0  on
/// B_rho0 × (-T, T), together with the structural constants they are
/// declared to satisfy.
struct CoefficientSet {
  int dim = 1;
  std::function<Matrix(const Point&)> A;
  std::function<double(const Point&)> a;
  std::function<Point(const Point&)> b;
  std::function<double(const Point&)> c;

  double lambda = 1.0;   // ellipticity, in (0, 1]
  double Lambda = 1.0;   // Lipschitz constant of A (scaled by rho0)
  double Lambda1 = 1.0;  // bound on the lower-order terms
  double rho0 = 1.0;
  double T = 1.0;

  /// Every field is independent of x.
  bool constant = false;
  std::string description;
};

enum class FieldPreset { Identity, Diag, LipschitzBump };

/// Named coefficient families used by scenario files.
///   identity        A = I
///   diag            A = diag(diag[0], diag[1])
///   lipschitz-bump  A = (kappa + slope |x| / rho0) I
/// All presets carry constant lower-order terms a, b, c.
struct PresetSpec {
  FieldPreset preset = FieldPreset::Identity;
  int dim = 1;
  std::vector<double> diag;
  double kappa = 1.0;
  double slope = 0.4;
  double a = 0.0;
  Point b{};
  double c = 0.0;
  double lambda = 1.0;
  double Lambda = 1.0;
  double Lambda1 = 1.0;
  double rho0 = 1.0;
  double T = 1.0;
};

FieldPreset parse_field_preset(const std::string& name);
const char* to_string(FieldPreset preset) noexcept;

CoefficientSet make_coefficients(const PresetSpec& spec);

struct HypothesisCheck {
  bool pass = true;
  double measured = 0.0;
  double allowed = 0.0;
  Point witness{};
  Point witness_pair{};  // second point of the worst pair (Lipschitz only)
};

struct ValidationVerdict {
  HypothesisCheck ellipticity_lower;  // min eigenvalue >= lambda
  HypothesisCheck ellipticity_upper;  // max eigenvalue <= 1/lambda
  HypothesisCheck lipschitz;          // rho0 |A(x*) - A(x)| / |x* - x| <= Lambda
  HypothesisCheck lower_order;        // T|a| + T^2/rho0 |b| + T^2 |c| <= Lambda1

  double lambda_hat = 0.0;   // tightest admissible lambda over the sample
  double Lambda_hat = 0.0;   // tightest Lipschitz constant over the sample
  double Lambda1_hat = 0.0;  // tightest lower-order bound over the sample
  std::size_t samples = 0;

  bool pass() const {
    return ellipticity_lower.pass && ellipticity_upper.pass && lipschitz.pass && lower_order.pass;
  }
};

/// Deterministic sample of B_rho0: a shifted Halton sequence (shift drawn from
/// `seed`) plus the nodes of a uniform lattice, together about 2*count points.
std::vector<Point> sample_ball(int dim, double rho0, std::size_t count, std::uint64_t seed);

/// Empirical check of the ellipticity, Lipschitz and lower-order hypotheses.
/// Throws Structural for a non-symmetric A sample and Data for non-finite values.
ValidationVerdict validate(const CoefficientSet& cs, std::size_t sample_count, std::uint64_t seed = 0);

/// Scale record of the change of variables U(y, eta) = u(rho(t0) y, eta T(t0) + t0).
struct TimeRescaling {
  double t0 = 0.0;
  double shrink = 1.0;  // 1 - |t0| / T
  double rho_t0 = 1.0;  // shrink * rho0
  double T_t0 = 1.0;    // shrink * T
  double lambda0 = 1.0;
  double Lambda0 = 1.0;
};

struct RescaledCoefficients {
  CoefficientSet coefficients;  // rho0 = T = 1
  TimeRescaling scale;
};

/// Coefficients of the equation satisfied by U on B_1 × (-1, 1). Throws Domain
/// when |t0| >= T.
RescaledCoefficients rescale_to_time(const CoefficientSet& cs, double t0);

}  // namespace ucp
