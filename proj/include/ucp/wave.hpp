#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ucp/fields.hpp"
#include "ucp/grid.hpp"

namespace ucp {

inline constexpr double kDefaultCfl = 0.5;

/// Uniform space-time grid: a cube-embedded tensor grid on B_rho0 (nodes with
/// |x| >= rho0 are outside the domain) times nt nodes on [-T, T].
struct SpaceTimeGrid {
  TensorGrid space;
  int dim = 1;
  double rho0 = 1.0;
  double T = 1.0;
  int nt = 0;
  double dt = 0.0;

  double time(int it) const { return -T + dt * it; }
  double dx() const { return space.axis(0).step; }
  int nx() const { return space.axis(0).count; }
  std::size_t nodes() const { return space.size(); }
  bool normalized() const { return rho0 == 1.0 && T == 1.0; }

  /// Throws Structural unless nt is odd (t = 0 must be a node) and nx >= 3.
  static SpaceTimeGrid make(int dim, double rho0, double T, int nx, int nt);

  /// Smallest odd nt, with nt - 1 a multiple of `multiple`, such that
  /// dt <= cfl * dx * sqrt(lambda).
  static SpaceTimeGrid with_cfl(int dim, double rho0, double T, int nx, double lambda, double cfl = kDefaultCfl,
                                int multiple = 2);
};

/// Throws Configuration unless dt <= cfl dx sqrt(lambda) with cfl <= 1/sqrt(n).
void check_cfl(const SpaceTimeGrid& grid, double lambda, double cfl);

enum class SolutionSource { Analytic, FiniteDifference };

const char* to_string(SolutionSource source) noexcept;

/// Samples of u on a space-time grid, time-major: u[it * nodes + f].
struct WaveSolution {
  SpaceTimeGrid grid;
  std::vector<double> u;
  std::vector<double> ut;
  std::vector<double> utt;  // exact second time derivative; analytic sources only
  SolutionSource source = SolutionSource::Analytic;
  double residual_norm = 0.0;

  std::span<const double> u_at(int it) const { return {u.data() + it * grid.nodes(), grid.nodes()}; }
  std::span<const double> ut_at(int it) const { return {ut.data() + it * grid.nodes(), grid.nodes()}; }
};

/// Closed-form solution u(x, t) with its first two time derivatives.
struct SolutionFunction {
  std::function<double(const Point&, double)> u;
  std::function<double(const Point&, double)> ut;
  std::function<double(const Point&, double)> utt;  // may be empty
};

/// Samples a closed-form solution and evaluates its discrete residual under `cs`.
WaveSolution sample_solution(const CoefficientSet& cs, const SpaceTimeGrid& grid, const SolutionFunction& fn);

struct StandingWaveMode {
  double kappa = 1.0;
  double omega = 0.0;       // temporal frequency
  double wavenumber = 0.0;  // spatial frequency, omega / sqrt(kappa)
};

/// m half-periods of sin over the radius [0, rho0]: wavenumber m pi / rho0.
StandingWaveMode standing_wave_mode(double kappa, int mode, double rho0);

/// Dispersion relation omega^2 = kappa xi^2.
double wavenumber_for(double kappa, double omega);

/// u = amplitude cos(omega t) sin(xi x) for A = kappa I, a = b = c = 0, n = 1.
/// Throws Unsupported for any other coefficient set.
SolutionFunction standing_wave_function(const CoefficientSet& cs, int mode, double amplitude = 1.0);

WaveSolution standing_wave(const CoefficientSet& cs, int mode, const SpaceTimeGrid& grid, double amplitude = 1.0);

/// Damped leapfrog for u_tt + a u_t = L u with homogeneous Dirichlet data on
/// the sphere |x| = rho0, started from u(., -T) = u0, u_t(., -T) = v0.
WaveSolution solve_fd(const CoefficientSet& cs, std::span<const double> u0, std::span<const double> v0,
                      const SpaceTimeGrid& grid, double cfl = kDefaultCfl);

/// Discrete L2 norm of  D_tt u + a D_t u - L_h u  over interior time levels and
/// interior nodes of B_rho0.
double discrete_residual(const CoefficientSet& cs, const SpaceTimeGrid& grid, std::span<const double> u);

/// (rho0^-n T^-1 int_{-T}^{T} int_{B_r0} u^2)^(1/2).
double epsilon_of(const WaveSolution& ws, double r0);

/// max_t (rho0^-n int u^2 + rho0^(1-n) int u_t^2)^(1/2) over B_rho0.
double h_bound_of(const WaveSolution& ws);

/// int_{B_r} u(x, t_it)^2 dx with ball quadrature.
double slice_l2_squared(const WaveSolution& ws, int it, double r);

/// u(., t) on the spatial nodes, cubic Hermite in time from u and u_t.
std::vector<double> time_slice(const WaveSolution& ws, double t);

struct PointValue {
  double u = 0.0;
  double ut = 0.0;
};

/// Tensor cubic Lagrange interpolation in space and cubic Hermite in time.
PointValue interpolate(const WaveSolution& ws, const Point& x, double t);

std::vector<double> sample_on(const TensorGrid& grid, int dim, const std::function<double(const Point&)>& f);

/// CSV table: x_index, t_index, u, ut (x_index is the flat spatial index).
void write_csv(const WaveSolution& ws, const std::string& path);

/// Little-endian binary: "UCPW", u32 version, u32 dim, u32 nx, u32 nt,
/// u32 source, f64 rho0, f64 T, f64 residual_norm, then u and ut as f64
/// arrays in time-major order.
void write_binary(const WaveSolution& ws, const std::string& path);
WaveSolution read_binary(const std::string& path);

}  // namespace ucp
