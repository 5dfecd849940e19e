#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ucp/carleman.hpp"
#include "ucp/fields.hpp"
#include "ucp/wave.hpp"

namespace ucp {

/// Unnamed constants of the stability estimate. C1 follows from lambda; C2 is
/// measured from the weight unless set positive here.
struct StabilityConstants {
  double C = 10.0;
  double s0 = 0.1;
  int k0 = 4;
  double C3 = 4.0;
  double C_star = 4.0;
  double tau0 = 4.0;
  double alpha = 0.25;
  double C2 = 0.0;
};

/// log(rho0 / C rho) / log(rho0 / r0). Throws Domain unless both logs are positive.
double theta0(double rho0, double C, double rho, double r0);
/// log(1 / C s) / log(1 / r0).
double theta_prop(double C, double s, double r0);
/// log(1 / C3 s) / (2 log(1 / r1)).
double theta_internal(double C3, double s, double r1);

/// 2 sqrt(5) / sqrt(lambda)
double c1_of(double lambda);
/// log of 4^k k eps^2 + H^2 k^3 (C1 r1)^(2k+2); -inf when both terms vanish.
double log_sigma_k(int k, double eps, double H, double r1, double lambda);
double sigma_k(int k, double eps, double H, double r1, double lambda);

/// log of sigma_k (psi0(s~)/psi0(r1))^(1+2tau) + H^2 k^3 5^k C2^(2k) (psi0(s~)/psi0(R))^(1+2tau).
/// C2 <= 0 means weight_comparability(w). Throws Domain unless r1 <= s~ <= R.
double log_omega(int k, double tau, double eps, double H, double r1, double s_tilde, double R,
                 const CarlemanWeight& w, double C2 = 0.0);
double omega(int k, double tau, double eps, double H, double r1, double s_tilde, double R, const CarlemanWeight& w,
             double C2 = 0.0);

struct KChoice {
  std::int64_t k_star = 0;
  bool main_branch = false;  // k_star >= k0
};
/// k* = min{p in Z : p >= log eps1 / (2 log r1)}. Throws Domain unless eps1, r1 lie in (0, 1).
KChoice choose_k(double eps1, double r1, int k0);

/// C (rho0/rho)^C (H + e eps)^2 / (theta0 log((H + e eps)/eps))^alpha, and 0 for eps = 0.
double bound_rhs(double eps, double H, double rho0, double rho, double r0, double C, double alpha);
double log_bound_rhs(double eps, double H, double rho0, double rho, double r0, double C, double alpha);
/// C s^(-C) (H + e eps)^2 / (theta log((H + e eps)/eps))^alpha with theta = theta_prop(C, s, r0).
double prop_rhs(double eps, double H, double s, double r0, double C, double alpha);

enum class SolutionFamily { StandingWave, Zero };
const char* to_string(SolutionFamily f) noexcept;
SolutionFamily parse_solution_family(const std::string& name);
SolutionSource parse_solution_source(const std::string& name);

/// How u is produced. Analytic standing waves need constant coefficients with
/// a = b = c = 0 and n = 1. The finite-difference source starts from
/// amplitude sin(m pi x1 / rho0) (times (1 - |x|^2/rho0^2)^2 when n = 2) at rest.
struct SolutionSpec {
  SolutionFamily family = SolutionFamily::StandingWave;
  SolutionSource source = SolutionSource::Analytic;
  int mode = 1;
  double amplitude = 1.0;
  int nx = 257;
  int nt = 0;  // 0: smallest admissible under the CFL factor
  double cfl = kDefaultCfl;
};

struct ExperimentSpec {
  PresetSpec coefficients;
  SolutionSpec solution;
  double t0 = 0.0;
  double r0 = 0.01;
  double rho = 0.05;
  double H_declared = 0.0;  // a priori bound; 0 means the measured H
  StabilityConstants constants;
  std::vector<int> k_table{4, 8, 16};
};

enum class Regime { Main, Fallback, SucpLimit };
const char* to_string(Regime r) noexcept;

struct SigmaOmegaRow {
  int k = 0;
  double tau = 0.0;
  double log_sigma = 0.0;
  double log_omega = 0.0;
  bool tau_admissible = true;  // k >= tau >= tau0
};

struct StabilityReport {
  // data
  double eps = 0.0;
  double H = 0.0;
  double H_measured = 0.0;
  double eps1 = 0.0;
  double H1 = 0.0;
  // geometry in the rescaled variables (rho0 = T = 1)
  double shrink = 1.0;
  double s = 0.0;
  double lambda0 = 0.0;
  double Lambda0 = 0.0;
  double r1 = 0.0;
  double R = 0.0;
  double s_tilde = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  // exponents
  double theta0 = 0.0;
  double theta_prop = 0.0;
  double theta_internal = 0.0;
  std::int64_t k_star = 0;
  Regime regime = Regime::SucpLimit;
  std::vector<SigmaOmegaRow> table;
  // the estimate
  double lhs = 0.0;            // rho0^-n int_{B_{shrink rho}} u(x, t0)^2
  double lhs_rescaled = 0.0;   // shrink^n int_{B_s} U(y, 0)^2
  double lhs_tolerance = 0.0;  // coarse-vs-fine differences of both evaluations
  bool lhs_consistent = true;  // |lhs - lhs_rescaled| <= 2 lhs_tolerance
  double rhs = 0.0;
  double log_rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  double prop_lhs = 0.0;  // int_{B_s} U(y, 0)^2
  double prop_rhs = 0.0;  // shrink^-n C s^-C (H + e eps)^2 / (theta log(...))^alpha
  double prop_margin = 0.0;
  double internal_lhs = 0.0;     // int_{B_{lambda0 s / 2}} U(y, 0)^2
  double main_branch_rhs = 0.0;  // 2 C3 H1^2 (eps1^(2 theta) + (2 log(1/r1) / log(1/eps1))^alpha) / s
  double fallback_rhs = 0.0;     // (C3 s)^(-2 k0) H1^(2(1 - theta)) eps^(2 theta)
  // rescaled data
  double eps_rescaled = 0.0;  // measured on U
  double H_rescaled = 0.0;
  double eps_rescaled_bound = 0.0;  // eps shrink^(-n/2)
  double H_rescaled_bound = 0.0;    // H shrink^(-n/2)
  double residual = 0.0;            // of u under the original coefficients
  double residual_rescaled = 0.0;   // of U under the rescaled coefficients
  std::string failed_stage;         // empty when the pipeline completed
  std::string failure;
};

/// U(y, eta) = u(rho(t0) y, eta T(t0) + t0) on the normalised grid with the same
/// node counts, sampled through interpolate().
WaveSolution rescale_solution(const WaveSolution& ws, const TimeRescaling& scale);

/// Builds u for the spec on B_rho0 × [-T, T].
WaveSolution generate_solution(const CoefficientSet& cs, const SolutionSpec& spec);

/// Full pipeline. Errors carry the failing stage in their message.
StabilityReport run_experiment(const ExperimentSpec& spec);

/// run_experiment for every amplitude, with H declared from amplitude 1 when
/// the spec does not declare it. Failures are recorded in the report.
std::vector<StabilityReport> delta_sweep(const ExperimentSpec& spec, const std::vector<double>& deltas, int jobs = 0);

struct SucpSample {
  int N = 0;
  double r0 = 0.0;
  double eps = 0.0;
  double H = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

enum class SucpVerdict { Consistent, Vacuous, NotFlat, Inconsistent };
const char* to_string(SucpVerdict v) noexcept;

struct SucpFit {
  SucpVerdict verdict = SucpVerdict::Inconsistent;
  double exponent = 0.0;  // fitted decay of sqrt(rhs) against N
  double target = 0.0;    // alpha / 2
  std::vector<int> N;
  std::vector<double> envelope;  // sqrt(rhs) at the smallest r0, per N
};

/// Groups samples by N and fits log sqrt(rhs at the smallest r0) against log N.
/// NotFlat when some eps / r0^N grows as r0 decreases (beyond `tolerance`).
/// Throws InsufficientData with fewer than 3 distinct N.
SucpFit sucp_extrapolate(const std::vector<SucpSample>& samples, double alpha, double tolerance = 0.1);

/// eps = r0^N, H = 1, lhs = 0 for every N and r0.
std::vector<SucpSample> synthetic_sucp_series(const std::vector<int>& Ns, const std::vector<double>& r0s,
                                              double rho0, double rho, double C, double alpha);

}  // namespace ucp
